#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "qcat/distributivity.hpp"
#include "qcat/text.hpp"
#include "support.hpp"

using namespace qcat;

namespace {

std::string slurp(const std::string& file) {
  std::ifstream in(std::string(QCAT_DATA_DIR) + "/" + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Error parse_error(std::string_view text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return Error(ErrorKind::InvalidInput, "");
}

Document only(std::string_view text) {
  auto docs = parse(text);
  EXPECT_EQ(docs.size(), 1u);
  return docs.at(0);
}

}  // namespace

TEST(Text, BuiltinQuantalesRoundTrip) {
  for (const auto& n : builtin_names()) {
    auto q = builtin(n);
    auto doc = to_document(q);
    const std::string printed = print(doc);
    auto back = std::get<QuantaleDoc>(only(printed));
    EXPECT_EQ(back, doc) << printed;
    EXPECT_EQ(to_quantale(back), q) << n;
    EXPECT_EQ(print(back), printed);
  }
}

TEST(Text, SugiharaFileIsTheBuiltin) {
  auto docs = parse(slurp("sugihara3.txt"));
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(to_quantale(std::get<QuantaleDoc>(docs[0])), builtin("sugihara3"));
}

TEST(Text, LeqMatrixForm) {
  auto doc = std::get<QuantaleDoc>(only(R"(quantale t
elements lo hi
leq
1 1
0 1
unit hi
tensor
lo lo
lo hi
end
)"));
  auto q = to_quantale(doc);
  EXPECT_TRUE(q.leq(*q.find("lo"), *q.find("hi")));
  EXPECT_EQ(q.tensor(*q.find("hi"), *q.find("hi")), *q.find("hi"));
}

TEST(Text, RandomCategoriesRoundTrip) {
  for (const char* n : {"two", "lukasiewicz3", "m3"}) {
    auto q = builtin_ptr(n);
    for (const auto& a : oracle::random_categories(q, 25, 4, 3)) {
      const std::string printed = print(to_document(a));
      auto doc = std::get<VCatDoc>(only(printed));
      EXPECT_EQ(doc.over, n);
      EXPECT_EQ(to_vcat(doc, q), a) << printed;
    }
  }
}

TEST(Text, SubsetsAndInstancesRoundTrip) {
  auto q = builtin_ptr("m3");
  auto a = omega_self(q);
  auto s = cocomplete_structure(a);
  for (const auto& inst : sample_law_instances(s, 40, 5, 3)) {
    const std::string printed = print(to_document("x", inst, a));
    auto back = to_instance(std::get<InstanceDoc>(only(printed)), a);
    EXPECT_EQ(back.psi, inst.psi) << printed;
    ASSERT_EQ(back.g.size(), inst.g.size());
    for (std::size_t k = 0; k < inst.k(); ++k) EXPECT_EQ(back.g[k].values, inst.g[k].values) << printed;
    for (const auto& g : inst.g) {
      const std::string sp = print(to_document("f", g, a));
      EXPECT_EQ(to_subset(std::get<SubsetDoc>(only(sp)), a).values, g.values) << sp;
    }
  }
}

TEST(Text, DataFiles) {
  Registry reg = Registry::with_builtins();
  auto triangle = parse(slurp("triangle.txt"), reg);
  ASSERT_EQ(triangle.size(), 1u);
  auto t = to_vcat(std::get<VCatDoc>(triangle[0]), builtin_ptr("lukasiewicz3"));
  EXPECT_EQ(t.size(), 3u);

  auto half = std::get<SubsetDoc>(only(slurp("lukasiewicz_half.txt")));
  auto luk = omega_self(builtin_ptr("lukasiewicz3"));
  auto f = to_subset(half, luk);
  EXPECT_EQ(f.values, (std::vector<QElem>{qe(0), qe(2), qe(0)}));

  auto m3 = omega_self(builtin_ptr("m3"));
  auto inst = to_instance(std::get<InstanceDoc>(only(slurp("m3_instance.txt"))), m3);
  auto expected = m3_instance(cocomplete_structure(m3));
  EXPECT_EQ(inst.psi, expected.psi);
  ASSERT_EQ(inst.g.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(inst.g[k].values, expected.g[k].values);
}

TEST(Text, LaterDocumentsSeeEarlierOnes) {
  auto docs = parse(R"(quantale b2
elements no yes
order
no < yes
unit yes
tensor
no no
no yes
end
vcat pair over b2
objects x y
hom
yes yes
no yes
end
subset s on pair
y = yes
end
)");
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_STREQ(kind_of(docs[1]), "vcat");
  EXPECT_EQ(name_of(docs[2]), "s");
}

TEST(Text, DimensionErrors) {
  auto e = parse_error(slurp("bad_dimension.txt"));
  EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  auto h = parse_error("vcat v over two\nobjects a b\nhom\n1 1\nend\n");
  EXPECT_EQ(h.kind(), ErrorKind::DimensionMismatch);
}

TEST(Text, UnknownTokens) {
  EXPECT_EQ(parse_error("vcat v over nowhere\nobjects a\nhom\n1\nend\n").kind(), ErrorKind::UnknownToken);
  EXPECT_EQ(parse_error("vcat v over two\nobjects a\nhom\nmaybe\nend\n").kind(), ErrorKind::UnknownToken);
  EXPECT_EQ(parse_error("subset s on lukasiewicz3\n3/4 = 1\nend\n").kind(), ErrorKind::UnknownToken);
}

TEST(Text, SyntaxErrorsCarryLineNumbers) {
  auto e = parse_error("# comment\n\nquantale q\nelements 0 1\nbogus\nend\n");
  EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
  EXPECT_NE(std::string(e.message()).find("line 5"), std::string::npos) << e.message();
  EXPECT_EQ(parse_error("quantale q\nelements 0 1\n").kind(), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error("frobnicate\n").kind(), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error("instance i on m3\n1: psi = e\nend\n").kind(), ErrorKind::SyntaxError);
}

TEST(Text, InvalidAlgebraIsRejectedOnConversion) {
  auto doc = std::get<QuantaleDoc>(only(R"(quantale bad
elements 0 1
order
0 < 1
unit 0
tensor
0 1
1 1
end
)"));
  EXPECT_THROW(to_quantale(doc), Error);
}

TEST(Text, Rendering) {
  auto q = builtin("two");
  const std::string t = render_operation(q, "*", &Quantale::tensor);
  EXPECT_NE(t.find('*'), std::string::npos);
  EXPECT_EQ(t, "* | 0 1\n-------\n0 | 0 0\n1 | 0 1\n");
  auto luk = omega_self(builtin_ptr("lukasiewicz3"));
  std::vector<QElem> v{qe(2), qe(2), qe(1)};
  EXPECT_EQ(render_values(luk, v), "0:1 1/2:1 1:1/2");
}
