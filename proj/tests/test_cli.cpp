#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "rslat/serialization.hpp"

using namespace rslat;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("rslat_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

template <class T>
void check_round_trip(const Json& j) {
  CHECK(Json(j.get<T>()) == j);
}

}  // namespace

TEST_CASE("documented examples") {
  auto md = run({"lattice", "min-dist", "--q", "5", "--k", "2", "--p", "1", "--budget", "6"});
  REQUIRE(md.code == 0);
  CHECK(md.json()["lambda1_pow_p"] == 4);
  check_round_trip<MinDistResult>(md.json());

  auto mk = run({"decode", "minkowski-report", "--q", "127"});
  REQUIRE(mk.code == 0);
  CHECK(mk.json()["k"] == 9);
  check_round_trip<MinkowskiReport>(mk.json());

  auto rw = run({"derand", "received-word", "--q", "5", "--k", "2", "--h", "2", "--u", "2,0"});
  REQUIRE(rw.code == 0);
  CHECK(rw.json()["r"] == Json::array({0, 4, 1, 1, 4}));
}

TEST_CASE("usage and input errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"derand", "received-word", "--q", "5", "--k", "2", "--h", "2", "--u", "3,0"}).code == 2);
  CHECK(run({"lattice", "min-dist", "--q", "6", "--k", "2", "--budget", "6"}).code == 2);
  CHECK(run({"lattice", "min-dist", "--q", "5", "--k", "2", "--budget", "x/y"}).code == 2);
  auto bad = temp_file("bad.json", "{ not json");
  CHECK(run({"gadget", "verify", "--in", bad}).code == 2);
  auto incomplete = temp_file("incomplete.json", "{\"p\": 1}");
  CHECK(run({"reduce", "verify-svp", "--in", incomplete}).code == 2);
  CHECK(run({"--work-limit", "10", "coset", "count", "--q", "11", "--k", "2", "--h", "3", "--u", "3,0"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("failed property checks exit 1") {
  auto fid = run({"--tolerance", "1e-30", "derand", "fourier-id", "--q", "5", "--k", "3", "--h", "3"});
  CHECK(fid.code == 1);
  CHECK(!fid.out.empty());
}

TEST_CASE("identical seeds give identical output") {
  const std::vector<std::string> args{"--seed", "7", "coset", "sample", "--q", "11", "--k", "2", "--h", "3"};
  auto a = run(args);
  auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto c = run({"--seed", "8", "coset", "sample", "--q", "11", "--k", "2", "--h", "3"});
  CHECK(c.code == 0);

  const std::vector<std::string> gen{"--seed", "3", "gadget", "generate", "--q", "5", "--k", "2"};
  CHECK(run(gen).out == run(gen).out);
}

TEST_CASE("gadget and reduction pipeline through files") {
  auto gen = run({"--seed", "21", "gadget", "generate", "--q", "5", "--k", "2", "--r", "1", "--retries", "100"});
  REQUIRE(gen.code == 0);
  check_round_trip<LocallyDenseGadget>(gen.json());
  auto gadget_path = temp_file("gadget.json", gen.out);
  auto verify = run({"gadget", "verify", "--in", gadget_path});
  CHECK(verify.code == 0);
  CHECK(verify.json()["ok"] == true);
  check_round_trip<GadgetCheck>(verify.json());

  GapCVPPrimeInstance cvp{1, IntMatrix{{1}, {2}}, {0, 0}, Rational(1, 2), 5};
  auto cvp_path = temp_file("cvp.json", Json(cvp).dump());
  auto vc = run({"reduce", "verify-cvp", "--in", cvp_path});
  REQUIRE(vc.code == 0);
  check_round_trip<PromiseVerdict>(vc.json());

  auto built = run({"reduce", "build", "--cvp", cvp_path, "--gadget", gadget_path});
  REQUIRE(built.code == 0);
  auto svp_json = built.json();
  auto svp = svp_json.get<GapSVPInstance>();
  auto svp_path = temp_file("svp.json", Json(svp).dump());
  auto vs = run({"reduce", "verify-svp", "--in", svp_path});
  REQUIRE(vs.code == 0);
  CHECK(vs.json()["verdict"] == vc.json()["verdict"]);
  check_round_trip<GapSVPInstance>(Json(svp));
}

TEST_CASE("lattice, coset and decoding commands round-trip") {
  auto basis = run({"lattice", "basis", "--q", "5", "--k", "2"});
  REQUIRE(basis.code == 0);
  CHECK(basis.json()["abs_determinant"] == 25);
  check_round_trip<LatticeBasis>(basis.json());

  auto built = run({"lattice", "build", "--q", "7", "--k", "3", "--points", "0,1,2,3,4,5"});
  REQUIRE(built.code == 0);
  CHECK(built.json()["parity_check"]["points"].size() == 6);

  auto count = run({"coset", "count", "--q", "11", "--k", "2", "--h", "3", "--u", "3,0"});
  REQUIRE(count.code == 0);
  check_round_trip<CosetCount>(count.json());

  auto rs = run({"decode", "rs", "--q", "5", "--dim", "2", "--received", "1/3,2,3,4,1/2"});
  REQUIRE(rs.code == 0);
  check_round_trip<DecodeList>(rs.json());
  CHECK(rs.json()["certified"] == true);

  auto lat = run({"decode", "lattice", "--q", "5", "--k", "2", "--y", "0.1,0,0,0,-0.2"});
  REQUIRE(lat.code == 0);
  check_round_trip<DecodeList>(lat.json());
  CHECK(lat.json()["items"].size() == 1);
}

TEST_CASE("derand commands round-trip") {
  auto cs = run({"derand", "charsum", "--q", "7", "--coeffs", "1,2,3"});
  REQUIRE(cs.code == 0);
  check_round_trip<CharacterSumResult>(cs.json());

  auto conv = run({"derand", "convcount", "--q", "5", "--k", "2", "--h", "3", "--s", "3,0"});
  REQUIRE(conv.code == 0);
  CHECK(conv.json()["count"] == 25);
  auto table = run({"derand", "convcount", "--q", "5", "--k", "2", "--h", "3"});
  REQUIRE(table.code == 0);
  CHECK(table.json()["total"] == 125);

  auto fid = run({"derand", "fourier-id", "--q", "5", "--k", "2", "--h", "3", "--s", "3,0"});
  REQUIRE(fid.code == 0);
  auto fj = fid.json();
  CHECK(fj["exact_count"] == 25);
  CHECK(fj["paper_main_term"] == 625);
  check_round_trip<FourierCountDecomposition>(
      Json{{"main_term", fj["main_term"]}, {"correction", fj["correction"]},
           {"exact_count", fj["exact_count"]}, {"paper_main_term", fj["paper_main_term"]},
           {"reconciliation_error", fj["reconciliation_error"]},
           {"correction_bound", fj["correction_bound"]}});
  check_round_trip<FourierBarrier>(fj["barrier"]);

  auto th = run({"derand", "theta", "--p", "1", "--tau", "0.6931471805599453", "--line", "1,0",
                 "--derivatives", "0.5,1,2"});
  REQUIRE(th.code == 0);
  auto tj = th.json();
  CHECK(tj["theta"].get<double>() == doctest::Approx(3).epsilon(1e-11));
  for (const auto& pt : tj["derivatives"]) check_round_trip<ThetaDerivativePoint>(pt);

  auto np = run({"derand", "np-bounds", "--p", "1", "--r", "2", "--tau", "2", "--q", "5", "--k", "1",
                 "--shift", "1,1,0,0,0"});
  REQUIRE(np.code == 0);
  check_round_trip<NpBounds>(np.json());
}

TEST_CASE("csv output and --out") {
  auto csv = run({"--format", "csv", "derand", "convcount", "--q", "3", "--k", "1", "--h", "2"});
  REQUIRE(csv.code == 0);
  std::istringstream lines(csv.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "count,s");
  std::size_t rows = 0;
  while (std::getline(lines, line)) rows += !line.empty();
  CHECK(rows == 3);

  auto path = (std::filesystem::temp_directory_path() / "rslat_cli_out.json").string();
  auto written = run({"--out", path, "decode", "minkowski-report", "--q", "13"});
  REQUIRE(written.code == 0);
  CHECK(written.out.empty());
  std::ifstream in(path);
  CHECK(Json::parse(in)["q"] == 13);
}
