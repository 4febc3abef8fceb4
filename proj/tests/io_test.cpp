#include "ptd/io.hpp"

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "ptd/random.hpp"

using namespace ptd;

namespace {

std::string error_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Io, CanonicalStateLayout) {
  const auto text = io::emit_state(ComplexMatrix::diagonal({0.5, 0.5}));
  EXPECT_EQ(text,
            "{\n"
            "  \"kind\": \"state\",\n"
            "  \"dim\": 2,\n"
            "  \"re\": [\n"
            "    [0.5, 0],\n"
            "    [0, 0.5]\n"
            "  ],\n"
            "  \"im\": [\n"
            "    [0, 0],\n"
            "    [0, 0]\n"
            "  ]\n"
            "}\n");
  EXPECT_NO_THROW(io::parse_state(text));
}

TEST(Io, TraceErrorCarriesSignedMagnitude) {
  try {
    io::parse_state(R"({"kind": "state", "dim": 2, "re": [[0.6, 0], [0, 0.6]]})");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TraceNotOne);
    EXPECT_NEAR(*e.magnitude(), 0.2, 1e-15);
  }
}

TEST(Io, RoundTripIsBitExact) {
  Rng rng(1);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t d = rng.uniform_index(1, 5);
    const auto rho = random_density_matrix(d, rng.uniform_index(1, d), rng);
    const auto text = io::emit_state(rho);
    EXPECT_EQ(io::parse_state_matrix(text), rho.matrix());
    EXPECT_EQ(io::canonicalize(text), text);

    const auto kraus = random_trace_preserving_channel(d, 2, 3, rng);
    const auto ktext = io::emit_kraus(kraus);
    EXPECT_EQ(io::parse_kraus_operators(ktext), kraus.kraus());
    EXPECT_EQ(io::canonicalize(ktext), ktext);

    const auto povm = random_rank_one_povm(d, d + 1, rng);
    const auto ptext = io::emit_povm(povm);
    EXPECT_EQ(io::parse_povm(ptext).elements(), povm.elements());
    EXPECT_EQ(io::canonicalize(ptext), ptext);

    const auto op = random_ginibre(d, d + 1, rng);
    const auto otext = io::emit_operator(op);
    EXPECT_EQ(io::parse_operator(otext), op);
    EXPECT_EQ(io::canonicalize(otext), otext);

    const auto vec = random_probability_vector(d + 2, rng);
    const auto vtext = io::emit_vector(vec);
    EXPECT_EQ(io::parse_vector(vtext), vec);
    EXPECT_EQ(io::canonicalize(vtext), vtext);
  }
}

TEST(Io, NumberFormatting) {
  EXPECT_EQ(io::format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_number(-0.0), "0");
  EXPECT_EQ(io::format_number(1.0), "1");
  EXPECT_EQ(io::format_number(1e-300), "1e-300");
  EXPECT_EQ(io::format_number(1.0 / 3.0), "0.33333333333333331");
}

TEST(Io, ImaginaryPartOptional) {
  const auto m = io::parse_operator(R"({"kind": "operator", "rows": 1, "cols": 2, "re": [[1, 2]]})");
  EXPECT_EQ(m(0, 1), Complex(2.0, 0.0));
}

TEST(Io, MalformedTextReportsLine) {
  const auto msg = error_message([] { io::parse_state("{\n  \"kind\": \"state\",\n  \"dim\": ]\n}"); });
  EXPECT_NE(msg.find("ParseError"), std::string::npos);
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(Io, StructuralErrorsNameTheField) {
  const auto ragged = error_message(
      [] { io::parse_state(R"({"kind": "state", "dim": 2, "re": [[1, 0], [0]], "im": [[0, 0], [0, 0]]})"); });
  EXPECT_NE(ragged.find("re[1]"), std::string::npos) << ragged;
  const auto wrong_type = error_message(
      [] { io::parse_state(R"({"kind": "state", "dim": 2, "re": [[1, 0], [0, "x"]]})"); });
  EXPECT_NE(wrong_type.find("re[1][1]"), std::string::npos) << wrong_type;
  const auto missing = error_message([] { io::parse_vector(R"({"kind": "vector"})"); });
  EXPECT_NE(missing.find("values"), std::string::npos) << missing;
  const auto kind = error_message([] { io::parse_povm(R"({"kind": "state", "dim": 1, "re": [[1]]})"); });
  EXPECT_NE(kind.find("kind"), std::string::npos) << kind;
  const auto op = error_message([] {
    io::parse_kraus_operators(R"({"kind": "kraus_list", "dim_in": 2, "dim_out": 1, "operators": [{"re": [[1]]}]})");
  });
  EXPECT_NE(op.find("operators[0].re[0]"), std::string::npos) << op;
  EXPECT_PTD_ERROR(io::parse_state(R"({"kind": "state", "dim": 0, "re": []})"), ErrorCode::ParseError);
}

TEST(Io, ValidationDelegatedToModules) {
  EXPECT_PTD_ERROR(io::parse_povm(R"({"kind": "povm", "dim": 1, "elements": [{"re": [[0.5]]}]})"),
                   ErrorCode::CompletenessViolated);
  EXPECT_PTD_ERROR(io::parse_kraus(R"({"kind": "kraus_list", "dim_in": 1, "dim_out": 1,
                                       "operators": [{"re": [[1]]}, {"re": [[1]]}]})"),
                   ErrorCode::TraceIncreasing);
}

TEST(Io, CsvTable) {
  EXPECT_EQ(io::emit_csv({"k", "v"}, {{"1", "0.5"}, {"2", "1"}}), "k,v\n1,0.5\n2,1\n");
}

TEST(Io, GenericEmitterLayout) {
  io::Json j = io::Json::object();
  j["name"] = "x";
  j["list"] = io::Json::array();
  j["empty"] = io::Json::object();
  j["nested"] = io::Json::array({io::Json::object({{"a", 1}})});
  EXPECT_EQ(io::emit_json(j),
            "{\n"
            "  \"name\": \"x\",\n"
            "  \"list\": [],\n"
            "  \"empty\": {},\n"
            "  \"nested\": [\n"
            "    {\n"
            "      \"a\": 1\n"
            "    }\n"
            "  ]\n"
            "}\n");
}
