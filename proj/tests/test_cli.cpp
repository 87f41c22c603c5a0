#include "cli_app.hpp"

#include <hsjet/document.hpp>
#include <hsjet/random.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace hsjet;

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "hsjet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDoc {
public:
  explicit TempDoc(const std::string& text) {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("hsjet_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".hs");
    std::ofstream(path_) << text;
  }
  ~TempDoc() { fs::remove(path_); }
  std::string path() const { return path_.string(); }

private:
  fs::path path_;
};

const char* kSquare = "char 0; params s; derivations 1; vars x; gens x^2 - s;";
const char* kLine = "char 0; params s; derivations 1; vars x; gens x - s;";

std::string gen_text(const InputDocument& d, std::size_t i) {
  return diff_poly_string(d.variety.generators[i], d.variety.names());
}

ParseError parse_error(const std::string& text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for: " << text;
  return ParseError(0, 0, "");
}

}  // namespace

TEST(Parse, SquareDocument) {
  InputDocument d = parse_document(kSquare);
  EXPECT_EQ(d.variety.field.characteristic, 0u);
  EXPECT_EQ(d.variety.field.derivation_count, 1u);
  EXPECT_EQ(d.variety.var_count, 1u);
  ASSERT_EQ(d.variety.generators.size(), 1u);
  EXPECT_EQ(gen_text(d, 0), "x^2 - s");
  EXPECT_FALSE(d.point.has_value());
}

TEST(Parse, QuotientByParameter) {
  InputDocument d = parse_document("char 0; params s; derivations 1; vars x; gens x / s;");
  const FieldDescriptor& f = d.variety.field;
  EXPECT_EQ(d.variety.generators[0], diff_var(0, 1).scaled(BaseElem::param(f, 0).inverse()));
}

TEST(Parse, VariableInDenominator) {
  ParseError e = parse_error("char 0; params s; derivations 1; vars x; gens 1 / x;");
  EXPECT_NE(std::string(e.what()).find("variety variable in denominator"), std::string::npos);
  EXPECT_EQ(e.line(), 1u);
  EXPECT_EQ(e.column(), 51u);
}

TEST(Parse, NonPrimeCharacteristic) {
  ParseError e = parse_error("char 6;\nparams s; derivations 1; vars x; gens x;");
  EXPECT_EQ(e.line(), 1u);
  EXPECT_EQ(e.column(), 6u);
  EXPECT_NE(std::string(e.what()).find("neither 0 nor prime"), std::string::npos);
}

TEST(Parse, UndeclaredIdentifierPosition) {
  ParseError e = parse_error("char 0;\nparams s;\nderivations 1;\nvars x;\ngens x +  y;");
  EXPECT_EQ(e.line(), 5u);
  EXPECT_EQ(e.column(), 11u);
  EXPECT_NE(std::string(e.what()).find("undeclared identifier 'y'"), std::string::npos);
}

TEST(Parse, SyntaxErrors) {
  EXPECT_THROW(parse_document("char 0 params s; derivations 1; vars x; gens x;"), ParseError);
  EXPECT_THROW(parse_document("char 0; params s; derivations 1; vars x; gens x +;"), ParseError);
  EXPECT_THROW(parse_document("char 0; params s; derivations 1; vars x; gens (x;"), ParseError);
  EXPECT_THROW(parse_document("char 0; params s; derivations 1; vars x; gens x^s;"), ParseError);
  EXPECT_THROW(parse_document("char 0; params s; derivations 1; vars x; gens x; extra"), ParseError);
  EXPECT_THROW(parse_document("char 0; params s; derivations 1; vars x; gens x $ 1;"), ParseError);
  EXPECT_THROW(parse_document("char 0; params s; derivations 2; vars x; gens x;"), ParseError);
  EXPECT_THROW(parse_document("char 0; params s; derivations 1; vars s; gens s;"), ParseError);
  EXPECT_THROW(parse_document("char 0; params s; derivations 1; vars d1x; gens d1x;"), ParseError);
  EXPECT_THROW(parse_document("char 0; params s; derivations 1; vars x; gens d1x;"), ParseError);
  EXPECT_THROW(parse_document("char 0; params s; derivations 1; vars x; gens x/(s - s);"), ParseError);
  EXPECT_THROW(parse_document("char 1; params s; derivations 1; vars x; gens x;"), ParseError);
  EXPECT_THROW(parse_document(""), ParseError);
}

TEST(Parse, CommentsCommasAndPoint) {
  InputDocument d = parse_document(
      "# circle\nchar 5; params s, t; derivations 2;\nvars x, y;  # coordinates\n"
      "gens x^2 + y^2 - 1, x*y - s/(t + 1);\npoint x = 1, y = 0;\n");
  EXPECT_EQ(d.variety.field.characteristic, 5u);
  EXPECT_EQ(d.variety.var_count, 2u);
  ASSERT_TRUE(d.point.has_value());
  EXPECT_EQ((*d.point)[0], BaseElem::scalar(d.variety.field, 1));
  EXPECT_TRUE((*d.point)[1].is_zero());
  EXPECT_EQ(gen_text(d, 1), "x*y + 4*s/(t + 1)");
}

TEST(Parse, RationalCoefficients) {
  InputDocument d = parse_document("char 0; params s; derivations 1; vars x; gens 3/2*x - 1/(s + 2);");
  EXPECT_EQ(gen_text(d, 0), "3/2*x - 1/(s + 2)");
}

TEST(Parse, PointRequiresEveryVariable) {
  EXPECT_THROW(parse_document("char 0; params s; derivations 1; vars x y; gens x; point x = 1;"), ParseError);
  EXPECT_THROW(parse_document("char 0; params s; derivations 1; vars x; gens x; point x = 1, x = 2;"), ParseError);
  EXPECT_THROW(parse_document("char 0; params s; derivations 1; vars x; gens x; point x = x;"), ParseError);
}

TEST(Parse, MapSpec) {
  InputDocument d = parse_document(kSquare);
  MorphismSpec m = parse_map("y = x^2, z = s*x", d.variety.field, d.variety.var_names);
  EXPECT_EQ(m.target_names, (std::vector<std::string>{"y", "z"}));
  EXPECT_EQ(diff_poly_string(m.images[1], d.variety.names()), "s*x");
  EXPECT_THROW(parse_map("y = d1x", d.variety.field, d.variety.var_names), ParseError);
  EXPECT_THROW(parse_map("y = 1, y = 2", d.variety.field, d.variety.var_names), ParseError);
}

TEST(Parse, PrintedSquareDocument) {
  EXPECT_EQ(print_document(parse_document(kSquare)),
            "char 0;\nparams s;\nderivations 1;\nvars x;\ngens x^2 - s;\n");
}

class RoundTrip : public ::testing::TestWithParam<FieldDescriptor> {};

TEST_P(RoundTrip, ParsePrintParse) {
  const FieldDescriptor& f = GetParam();
  Rng rng(20 + f.characteristic + f.derivation_count);
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned q = 1 + static_cast<unsigned>(rng.uniform(0, 2));
    PointAssignment pt = rng.point(f, q);
    InputDocument d{rng.variety_through(f, pt, 1 + static_cast<unsigned>(rng.uniform(0, 2))), std::nullopt};
    if (trial % 2) d.point = pt;
    const std::string text = print_document(d);
    const InputDocument once = parse_document(text);
    const InputDocument twice = parse_document(print_document(once));
    ASSERT_EQ(print_document(once), text) << text;
    ASSERT_EQ(once.variety.generators, d.variety.generators) << text;
    ASSERT_EQ(twice.variety.generators, once.variety.generators) << text;
    ASSERT_EQ(once.point, d.point) << text;
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, RoundTrip,
                         ::testing::Values(FieldDescriptor{0, {"s"}, 1}, FieldDescriptor{0, {"s1", "s2"}, 2},
                                           FieldDescriptor{5, {"s"}, 1}, FieldDescriptor{3, {"s", "t"}, 1},
                                           FieldDescriptor{0, {}, 0}));

TEST(Cli, ProlongSquare) {
  TempDoc doc(kSquare);
  CliResult r = run({"prolong", "--order", "1", "--mode", "prolong", doc.path()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "P_m mode=prolong vars=1 derivations=1 order=1\nx\nd1x\nx^2 - s\n2*x*d1x - 1\n");
}

TEST(Cli, JetAlias) {
  TempDoc doc(kSquare);
  CliResult a = run({"jet", "--order", "2", doc.path()});
  CliResult b = run({"prolong", "--order", "2", "--mode", "jet", doc.path()});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("mode=jet"), std::string::npos);
}

TEST(Cli, NablaOnVariety) {
  TempDoc doc(kLine);
  CliResult r = run({"nabla", "--order", "2", "--point", "x=s", doc.path()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{x:s, d1x:1, d2x:0}\nON-VARIETY: yes\n");
}

TEST(Cli, NablaOffVariety) {
  TempDoc doc(kLine);
  CliResult r = run({"nabla", "--order", "2", "--point", "x=1", doc.path()});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("ON-VARIETY: no\n", 0), 0u);
}

TEST(Cli, NablaUsesPointBlock) {
  TempDoc doc("char 0; params s; derivations 1; vars x; gens x - s; point x = s;");
  CliResult r = run({"nabla", "--order", "1", doc.path()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{x:s, d1x:1}\nON-VARIETY: yes\n");
}

TEST(Cli, NablaJson) {
  TempDoc doc(kLine);
  CliResult r = run({"nabla", "--order", "1", "--point", "x=s", "--json", doc.path()});
  ASSERT_EQ(r.code, 0);
  cli::Json j = cli::Json::parse(r.out);
  EXPECT_EQ(j["point"]["d1x"], "1");
  EXPECT_EQ(j["on_variety"], true);
}

TEST(Cli, ProlongJsonMirrorsText) {
  TempDoc doc(kSquare);
  CliResult r = run({"prolong", "--order", "1", "--json", doc.path()});
  ASSERT_EQ(r.code, 0);
  cli::Json j = cli::Json::parse(r.out);
  EXPECT_EQ(j["mode"], "prolong");
  EXPECT_EQ(j["symbols"], cli::Json::parse(R"(["x", "d1x"])"));
  ASSERT_EQ(j["generators"].size(), 2u);
  EXPECT_EQ(j["generators"][1]["poly"], "2*x*d1x - 1");
  EXPECT_EQ(j["generators"][1]["alpha"], cli::Json::parse("[1]"));
}

TEST(Cli, Lift) {
  TempDoc doc(kSquare);
  CliResult r = run({"lift", "--order", "2", "--map", "y = x^2", doc.path()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "lift mode=prolong order=2 targets=1\ny -> x^2\nd1y -> 2*x*d1x\nd2y -> 2*x*d2x + d1x^2\n");
}

TEST(Cli, InputErrorsExitTwo) {
  TempDoc bad("char 0; params s; derivations 1; vars x; gens 1 / x;");
  CliResult r = run({"prolong", bad.path()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 1, column 51"), std::string::npos);
  EXPECT_EQ(run({"prolong", "/nonexistent/file.hs"}).code, 2);
  EXPECT_EQ(run({"check", "nosuch"}).code, 2);
  EXPECT_EQ(run({"prolong", "--mode", "sideways", bad.path()}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  TempDoc doc(kLine);
  EXPECT_EQ(run({"nabla", doc.path()}).code, 2);
  EXPECT_EQ(run({"nabla", "--point", "x=", doc.path()}).code, 2);
}

TEST(Cli, CheckHeaderCarriesSeed) {
  CliResult r = run({"check", "multinomial", "--seed", "7", "--max", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("check multinomial seed=7 trials=100\n", 0), 0u);
  EXPECT_NE(r.out.find("RESULT: PASS"), std::string::npos);
}

TEST(Cli, CheckDeterministic) {
  CliResult a = run({"check", "theta", "--seed", "11", "--trials", "20"});
  CliResult b = run({"check", "theta", "--seed", "11", "--trials", "20"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, CheckJson) {
  CliResult r = run({"check", "tensor", "--seed", "2", "--trials", "10", "--json"});
  ASSERT_EQ(r.code, 0);
  cli::Json j = cli::Json::parse(r.out);
  EXPECT_EQ(j["seed"], 2);
  EXPECT_EQ(j["passed"], true);
  EXPECT_FALSE(j["reports"].empty());
}
