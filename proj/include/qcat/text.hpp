#pragma once

/**
 * @file text.hpp
 * @brief Line-oriented text format for quantales, categories, Ω-subsets and
 * law instances, plus table rendering.
 *
 *   quantale NAME            vcat NAME over QNAME      subset NAME on CAT
 *   elements T1 ... Tn       objects O1 ... Om         O = T
 *   order                    hom                       ...
 *   Ti < Tj                  m rows of m tokens        end
 *   ...                      end
 *   unit T                                             instance NAME on CAT
 *   tensor                                             k: psi = T
 *   n rows of n tokens                                 k: G
 *   end                                                O = T
 *                                                      ...
 *                                                      end
 *
 * `#` starts a comment; blank lines are ignored. A quantale may give `leq`
 * followed by n rows of 0/1 instead of `order`. Unlisted subset entries are ⊥.
 */

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qcat/core.hpp"
#include "qcat/distributivity.hpp"
#include "qcat/presheaf.hpp"
#include "qcat/quantale.hpp"
#include "qcat/vcat.hpp"

namespace qcat {

struct QuantaleDoc {
  std::string name;
  std::vector<std::string> elements;
  Square<char> leq;
  std::string unit;
  std::vector<std::vector<std::string>> tensor;
  friend bool operator==(const QuantaleDoc&, const QuantaleDoc&) = default;
};

struct VCatDoc {
  std::string name;
  std::string over;
  std::vector<std::string> objects;
  std::vector<std::vector<std::string>> hom;
  friend bool operator==(const VCatDoc&, const VCatDoc&) = default;
};

using Entries = std::vector<std::pair<std::string, std::string>>;

struct SubsetDoc {
  std::string name;
  std::string on;
  Entries entries;
  friend bool operator==(const SubsetDoc&, const SubsetDoc&) = default;
};

struct InstanceDoc {
  struct Block {
    std::string psi;
    Entries g;
    friend bool operator==(const Block&, const Block&) = default;
  };
  std::string name;
  std::string on;
  std::vector<Block> blocks;
  friend bool operator==(const InstanceDoc&, const InstanceDoc&) = default;
};

using Document = std::variant<QuantaleDoc, VCatDoc, SubsetDoc, InstanceDoc>;

inline const char* kind_of(const Document& d) {
  static constexpr const char* kinds[] = {"quantale", "vcat", "subset", "instance"};
  return kinds[d.index()];
}

inline const std::string& name_of(const Document& d) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, d);
}

/// Names known while parsing: quantale element tokens and category object names.
class Registry {
 public:
  struct CatInfo {
    std::vector<std::string> objects;
    std::string quantale;
  };

  /// Every builtin quantale, and Ω over itself registered under the quantale's name.
  static Registry with_builtins() {
    Registry r;
    for (const auto& n : builtin_names()) {
      auto q = builtin(n);
      r.quantales_[n] = q.lattice().tokens();
      r.categories_[n] = {q.lattice().tokens(), n};
    }
    return r;
  }

  void add(const Document& d) {
    if (auto* q = std::get_if<QuantaleDoc>(&d)) {
      quantales_[q->name] = q->elements;
      categories_[q->name] = {q->elements, q->name};
    } else if (auto* c = std::get_if<VCatDoc>(&d)) {
      categories_[c->name] = {c->objects, c->over};
    }
  }

  const std::vector<std::string>* elements(const std::string& quantale) const {
    auto it = quantales_.find(quantale);
    return it == quantales_.end() ? nullptr : &it->second;
  }
  const CatInfo* category(const std::string& name) const {
    auto it = categories_.find(name);
    return it == categories_.end() ? nullptr : &it->second;
  }

 private:
  std::map<std::string, std::vector<std::string>> quantales_;
  std::map<std::string, CatInfo> categories_;
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline std::string at_line(std::size_t line, const std::string& msg) { return "line " + std::to_string(line) + ": " + msg; }

struct Line {
  std::size_t number;
  std::vector<std::string> words;
};

inline bool member(const std::vector<std::string>& xs, const std::string& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

class Parser {
 public:
  Parser(std::string_view text, Registry& reg) : reg_(reg) {
    std::size_t n = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
      ++n;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      auto words = split_ws(raw);
      if (!words.empty()) lines_.push_back({n, std::move(words)});
    }
  }

  std::vector<Document> run() {
    std::vector<Document> docs;
    while (pos_ < lines_.size()) {
      const Line& head = lines_[pos_];
      const std::string& kw = head.words[0];
      Document d;
      if (kw == "quantale")
        d = quantale();
      else if (kw == "vcat")
        d = vcat();
      else if (kw == "subset")
        d = subset();
      else if (kw == "instance")
        d = instance();
      else
        throw Error(ErrorKind::SyntaxError, at_line(head.number, "expected a document header, got '" + kw + "'"));
      reg_.add(d);
      docs.push_back(std::move(d));
    }
    return docs;
  }

 private:
  static bool is_keyword(const std::string& w) {
    static const std::vector<std::string> kws{"elements", "order", "leq", "unit", "tensor", "end", "objects", "hom"};
    return member(kws, w);
  }

  const Line& next(const char* what) {
    if (pos_ >= lines_.size())
      throw Error(ErrorKind::SyntaxError,
                  at_line(lines_.empty() ? 0 : lines_.back().number, std::string("unexpected end of input, expected ") + what));
    return lines_[pos_++];
  }

  const Line& expect(const std::string& kw, std::size_t min_words, std::size_t max_words) {
    const Line& l = next(kw.c_str());
    if (l.words[0] != kw) throw Error(ErrorKind::SyntaxError, at_line(l.number, "expected '" + kw + "'"));
    if (l.words.size() < min_words || l.words.size() > max_words)
      throw Error(ErrorKind::SyntaxError, at_line(l.number, "malformed '" + kw + "' line"));
    return l;
  }

  std::vector<Line> rows_until_keyword() {
    std::vector<Line> rows;
    while (pos_ < lines_.size() && !is_keyword(lines_[pos_].words[0])) rows.push_back(lines_[pos_++]);
    return rows;
  }

  void check_token(const std::vector<std::string>& allowed, const std::string& tok, std::size_t line,
                   const std::string& what) {
    if (!member(allowed, tok))
      throw Error(ErrorKind::UnknownToken, at_line(line, "unknown " + what + " '" + tok + "'"), {tok});
  }

  std::vector<std::vector<std::string>> square_rows(const std::vector<std::string>& allowed, std::size_t n,
                                                    std::size_t header_line, const std::string& what) {
    auto rows = rows_until_keyword();
    if (rows.size() != n)
      throw Error(ErrorKind::DimensionMismatch,
                  at_line(rows.empty() ? header_line : rows.back().number,
                          what + " has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(n)));
    std::vector<std::vector<std::string>> out;
    for (const auto& r : rows) {
      if (r.words.size() != n)
        throw Error(ErrorKind::DimensionMismatch,
                    at_line(r.number, what + " row has " + std::to_string(r.words.size()) + " entries, expected " +
                                          std::to_string(n)));
      for (const auto& w : r.words) check_token(allowed, w, r.number, "element");
      out.push_back(r.words);
    }
    return out;
  }

  QuantaleDoc quantale() {
    const Line& head = expect("quantale", 2, 2);
    QuantaleDoc d;
    d.name = head.words[1];
    const Line& el = expect("elements", 2, static_cast<std::size_t>(-1));
    d.elements.assign(el.words.begin() + 1, el.words.end());
    const std::size_t n = d.elements.size();
    bool have_order = false, have_unit = false, have_tensor = false;
    while (true) {
      const Line& l = next("'end'");
      const std::string& kw = l.words[0];
      if (kw == "end") break;
      if (kw == "order") {
        std::vector<std::pair<std::size_t, std::size_t>> covers;
        for (const auto& r : rows_until_keyword()) {
          if (r.words.size() != 3 || r.words[1] != "<")
            throw Error(ErrorKind::SyntaxError, at_line(r.number, "expected 'T < T'"));
          check_token(d.elements, r.words[0], r.number, "element");
          check_token(d.elements, r.words[2], r.number, "element");
          auto idx = [&](const std::string& t) {
            return static_cast<std::size_t>(std::find(d.elements.begin(), d.elements.end(), t) - d.elements.begin());
          };
          covers.emplace_back(idx(r.words[0]), idx(r.words[2]));
        }
        d.leq = order_from_covers(n, covers);
        have_order = true;
      } else if (kw == "leq") {
        auto rows = square_rows({"0", "1"}, n, l.number, "leq");
        d.leq = Square<char>(n, 0);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) d.leq(i, j) = rows[i][j] == "1" ? 1 : 0;
        have_order = true;
      } else if (kw == "unit") {
        if (l.words.size() != 2) throw Error(ErrorKind::SyntaxError, at_line(l.number, "expected 'unit T'"));
        check_token(d.elements, l.words[1], l.number, "element");
        d.unit = l.words[1];
        have_unit = true;
      } else if (kw == "tensor") {
        d.tensor = square_rows(d.elements, n, l.number, "tensor");
        have_tensor = true;
      } else {
        throw Error(ErrorKind::SyntaxError, at_line(l.number, "unexpected '" + kw + "' in quantale"));
      }
    }
    if (!have_order || !have_unit || !have_tensor)
      throw Error(ErrorKind::SyntaxError,
                  at_line(head.number, "quantale " + d.name + " needs order (or leq), unit and tensor sections"));
    return d;
  }

  VCatDoc vcat() {
    const Line& head = expect("vcat", 4, 4);
    if (head.words[2] != "over") throw Error(ErrorKind::SyntaxError, at_line(head.number, "expected 'vcat NAME over Q'"));
    VCatDoc d;
    d.name = head.words[1];
    d.over = head.words[3];
    const auto* elems = reg_.elements(d.over);
    if (!elems) throw Error(ErrorKind::UnknownToken, at_line(head.number, "unknown quantale '" + d.over + "'"), {d.over});
    const Line& ob = expect("objects", 1, static_cast<std::size_t>(-1));
    d.objects.assign(ob.words.begin() + 1, ob.words.end());
    const Line& h = expect("hom", 1, 1);
    d.hom = square_rows(*elems, d.objects.size(), h.number, "hom");
    expect("end", 1, 1);
    return d;
  }

  Entries entries(const Registry::CatInfo& cat, const std::vector<std::string>& elems) {
    Entries out;
    while (pos_ < lines_.size() && lines_[pos_].words[0] != "end" && lines_[pos_].words[0].back() != ':') {
      const Line& l = lines_[pos_++];
      if (l.words.size() != 3 || l.words[1] != "=") throw Error(ErrorKind::SyntaxError, at_line(l.number, "expected 'O = T'"));
      check_token(cat.objects, l.words[0], l.number, "object");
      check_token(elems, l.words[2], l.number, "element");
      out.emplace_back(l.words[0], l.words[2]);
    }
    return out;
  }

  std::pair<const Registry::CatInfo*, const std::vector<std::string>*> target(const Line& head) {
    if (head.words.size() != 4 || head.words[2] != "on")
      throw Error(ErrorKind::SyntaxError, at_line(head.number, "expected '" + head.words[0] + " NAME on CAT'"));
    const auto* cat = reg_.category(head.words[3]);
    if (!cat) throw Error(ErrorKind::UnknownToken, at_line(head.number, "unknown category '" + head.words[3] + "'"), {head.words[3]});
    const auto* elems = reg_.elements(cat->quantale);
    if (!elems)
      throw Error(ErrorKind::UnknownToken, at_line(head.number, "unknown quantale '" + cat->quantale + "'"), {cat->quantale});
    return {cat, elems};
  }

  SubsetDoc subset() {
    const Line& head = next("subset");
    auto [cat, elems] = target(head);
    SubsetDoc d{head.words[1], head.words[3], entries(*cat, *elems)};
    expect("end", 1, 1);
    return d;
  }

  InstanceDoc instance() {
    const Line& head = next("instance");
    auto [cat, elems] = target(head);
    InstanceDoc d;
    d.name = head.words[1];
    d.on = head.words[3];
    while (true) {
      const Line& l = next("'end'");
      if (l.words[0] == "end") break;
      const std::string label = std::to_string(d.blocks.size()) + ":";
      if (l.words[0] != label)
        throw Error(ErrorKind::SyntaxError, at_line(l.number, "expected block label '" + label + "'"));
      if (l.words.size() != 4 || l.words[1] != "psi" || l.words[2] != "=")
        throw Error(ErrorKind::SyntaxError, at_line(l.number, "expected '" + label + " psi = T'"));
      check_token(*elems, l.words[3], l.number, "element");
      InstanceDoc::Block b{l.words[3], {}};
      const Line& gl = next("G line");
      if (gl.words.size() != 2 || gl.words[0] != label || gl.words[1] != "G")
        throw Error(ErrorKind::SyntaxError, at_line(gl.number, "expected '" + label + " G'"));
      b.g = entries(*cat, *elems);
      d.blocks.push_back(std::move(b));
    }
    return d;
  }

  Registry& reg_;
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses every document in `text`, registering each so later documents may refer to it.
inline std::vector<Document> parse(std::string_view text, Registry& reg) { return detail::Parser(text, reg).run(); }

inline std::vector<Document> parse(std::string_view text) {
  Registry reg = Registry::with_builtins();
  return parse(text, reg);
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace detail {

inline std::string words(const std::vector<std::string>& xs) { return join_tokens(xs); }

inline void print_entries(std::ostream& out, const Entries& es) {
  for (const auto& [o, t] : es) out << o << " = " << t << "\n";
}

}  // namespace detail

inline std::string print(const Document& doc) {
  std::ostringstream out;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, QuantaleDoc>) {
          const std::size_t n = d.elements.size();
          out << "quantale " << d.name << "\n";
          out << "elements " << detail::words(d.elements) << "\n";
          std::vector<std::pair<std::size_t, std::size_t>> covers;
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
              if (a == b || !d.leq(a, b)) continue;
              bool cover = true;
              for (std::size_t c = 0; c < n && cover; ++c)
                if (c != a && c != b && d.leq(a, c) && d.leq(c, b)) cover = false;
              if (cover) covers.emplace_back(a, b);
            }
          if (order_from_covers(n, covers) == d.leq) {
            out << "order\n";
            for (auto [a, b] : covers) out << d.elements[a] << " < " << d.elements[b] << "\n";
          } else {
            out << "leq\n";
            for (std::size_t a = 0; a < n; ++a) {
              for (std::size_t b = 0; b < n; ++b) out << (b ? " " : "") << (d.leq(a, b) ? 1 : 0);
              out << "\n";
            }
          }
          out << "unit " << d.unit << "\n";
          out << "tensor\n";
          for (const auto& row : d.tensor) out << detail::words(row) << "\n";
          out << "end\n";
        } else if constexpr (std::is_same_v<T, VCatDoc>) {
          out << "vcat " << d.name << " over " << d.over << "\n";
          out << "objects" << (d.objects.empty() ? "" : " ") << detail::words(d.objects) << "\n";
          out << "hom\n";
          for (const auto& row : d.hom) out << detail::words(row) << "\n";
          out << "end\n";
        } else if constexpr (std::is_same_v<T, SubsetDoc>) {
          out << "subset " << d.name << " on " << d.on << "\n";
          detail::print_entries(out, d.entries);
          out << "end\n";
        } else {
          out << "instance " << d.name << " on " << d.on << "\n";
          for (std::size_t k = 0; k < d.blocks.size(); ++k) {
            out << k << ": psi = " << d.blocks[k].psi << "\n";
            out << k << ": G\n";
            detail::print_entries(out, d.blocks[k].g);
          }
          out << "end\n";
        }
      },
      doc);
  return out.str();
}

// ---------------------------------------------------------------------------
// Conversions between documents and validated structures
// ---------------------------------------------------------------------------

inline Quantale to_quantale(const QuantaleDoc& d) {
  const std::size_t n = d.elements.size();
  auto idx = [&](const std::string& t) -> std::size_t {
    auto it = std::find(d.elements.begin(), d.elements.end(), t);
    if (it == d.elements.end()) throw Error(ErrorKind::UnknownToken, "unknown element '" + t + "'", {t});
    return static_cast<std::size_t>(it - d.elements.begin());
  };
  if (d.tensor.size() != n) throw Error(ErrorKind::DimensionMismatch, "tensor table does not match carrier size");
  Square<std::size_t> t(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (d.tensor[i].size() != n) throw Error(ErrorKind::DimensionMismatch, "tensor row does not match carrier size");
    for (std::size_t j = 0; j < n; ++j) t(i, j) = idx(d.tensor[i][j]);
  }
  return Quantale::validate(QuantaleSpec{d.name, d.elements, d.leq, std::move(t), idx(d.unit)});
}

inline QuantaleDoc to_document(const Quantale& q) {
  QuantaleDoc d{q.name(), q.lattice().tokens(), q.lattice().order(), q.token(q.unit()), {}};
  for (QElem v : q.elements()) {
    std::vector<std::string> row;
    for (QElem w : q.elements()) row.push_back(q.token(q.tensor(v, w)));
    d.tensor.push_back(std::move(row));
  }
  return d;
}

inline VCat to_vcat(const VCatDoc& d, QuantalePtr q) {
  const std::size_t m = d.objects.size();
  if (d.hom.size() != m) throw Error(ErrorKind::DimensionMismatch, "hom table does not match object count");
  Square<QElem> hom(m, QElem{});
  for (std::size_t i = 0; i < m; ++i) {
    if (d.hom[i].size() != m) throw Error(ErrorKind::DimensionMismatch, "hom row does not match object count");
    for (std::size_t j = 0; j < m; ++j) {
      auto v = q->find(d.hom[i][j]);
      if (!v) throw Error(ErrorKind::UnknownToken, "unknown element '" + d.hom[i][j] + "'", {d.hom[i][j]});
      hom(i, j) = *v;
    }
  }
  return VCat::validate(std::move(q), d.name, d.objects, std::move(hom));
}

inline VCatDoc to_document(const VCat& a) {
  VCatDoc d{a.name(), a.quantale().name(), a.names(), {}};
  for (ObjId x : a.objects()) {
    std::vector<std::string> row;
    for (ObjId y : a.objects()) row.push_back(a.quantale().token(a.hom(x, y)));
    d.hom.push_back(std::move(row));
  }
  return d;
}

namespace detail {

inline std::vector<QElem> resolve_entries(const Entries& es, const VCat& a) {
  const auto& q = a.quantale();
  std::vector<QElem> out(a.size(), q.bot());
  for (const auto& [o, t] : es) {
    auto x = a.find(o);
    if (!x) throw Error(ErrorKind::UnknownToken, "unknown object '" + o + "'", {o});
    auto v = q.find(t);
    if (!v) throw Error(ErrorKind::UnknownToken, "unknown element '" + t + "'", {t});
    out[x->index] = *v;
  }
  return out;
}

/// Entries for every object whose value is not ⊥, in object order.
inline Entries sparse_entries(std::span<const QElem> values, const VCat& a) {
  Entries out;
  for (ObjId x : a.objects())
    if (values[x.index] != a.quantale().bot()) out.emplace_back(a.object_name(x), a.quantale().token(values[x.index]));
  return out;
}

}  // namespace detail

inline OmegaSubset to_subset(const SubsetDoc& d, const VCat& a) { return {detail::resolve_entries(d.entries, a)}; }

inline SubsetDoc to_document(const std::string& name, const OmegaSubset& f, const VCat& a) {
  return {name, a.name(), detail::sparse_entries(f.values, a)};
}

inline LawInstance to_instance(const InstanceDoc& d, const VCat& a) {
  LawInstance inst;
  for (const auto& b : d.blocks) {
    auto v = a.quantale().find(b.psi);
    if (!v) throw Error(ErrorKind::UnknownToken, "unknown element '" + b.psi + "'", {b.psi});
    inst.psi.push_back(*v);
    inst.g.push_back(OmegaSubset{detail::resolve_entries(b.g, a)});
  }
  return inst;
}

inline InstanceDoc to_document(const std::string& name, const LawInstance& inst, const VCat& a) {
  InstanceDoc d{name, a.name(), {}};
  for (std::size_t k = 0; k < inst.k(); ++k)
    d.blocks.push_back({a.quantale().token(inst.psi[k]), detail::sparse_entries(inst.g[k].values, a)});
  return d;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

/// Aligned token grid with a corner label, column header and one labelled row per entry of `rows`.
inline std::string render_grid(const std::string& corner, const std::vector<std::string>& row_labels,
                               const std::vector<std::string>& col_labels,
                               const std::vector<std::vector<std::string>>& cells) {
  std::size_t w0 = corner.size();
  for (const auto& r : row_labels) w0 = std::max(w0, r.size());
  std::vector<std::size_t> w(col_labels.size());
  for (std::size_t j = 0; j < col_labels.size(); ++j) {
    w[j] = col_labels[j].size();
    for (const auto& row : cells) w[j] = std::max(w[j], row.at(j).size());
  }
  std::ostringstream out;
  auto pad = [](const std::string& s, std::size_t width) { return s + std::string(width - s.size(), ' '); };
  auto line = [&](const std::string& label, const std::vector<std::string>& xs) {
    std::string s = pad(label, w0) + " |";
    for (std::size_t j = 0; j < xs.size(); ++j) s += " " + pad(xs[j], w[j]);
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out << s << "\n";
  };
  line(corner, col_labels);
  std::size_t total = w0 + 2;
  for (auto x : w) total += x + 1;
  out << std::string(total, '-') << "\n";
  for (std::size_t i = 0; i < row_labels.size(); ++i) line(row_labels[i], cells[i]);
  return out.str();
}

/// Row = left argument, column = right argument.
inline std::string render_operation(const Quantale& q, const std::string& label, QElem (Quantale::*op)(QElem, QElem) const) {
  std::vector<std::vector<std::string>> cells;
  for (QElem v : q.elements()) {
    std::vector<std::string> row;
    for (QElem w : q.elements()) row.push_back(q.token((q.*op)(v, w)));
    cells.push_back(std::move(row));
  }
  return render_grid(label, q.lattice().tokens(), q.lattice().tokens(), cells);
}

inline std::string render_hom(const VCat& a) {
  std::vector<std::vector<std::string>> cells;
  for (ObjId x : a.objects()) {
    std::vector<std::string> row;
    for (ObjId y : a.objects()) row.push_back(a.quantale().token(a.hom(x, y)));
    cells.push_back(std::move(row));
  }
  return render_grid("hom", a.names(), a.names(), cells);
}

/// `object: value` pairs in object order.
inline std::string render_values(const VCat& a, std::span<const QElem> values) {
  std::string s;
  for (ObjId x : a.objects()) s += (x.index ? " " : "") + a.object_name(x) + ":" + a.quantale().token(values[x.index]);
  return s;
}

}  // namespace qcat
