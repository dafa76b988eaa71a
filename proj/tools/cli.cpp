#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "rslat/decoding.hpp"
#include "rslat/density.hpp"
#include "rslat/derand.hpp"
#include "rslat/error.hpp"
#include "rslat/lattice.hpp"
#include "rslat/reduction.hpp"
#include "rslat/serialization.hpp"

namespace rslat::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240611;

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t work_limit = WorkLimits{}.max_work;
  double tolerance = 1e-6;
  std::string format = "json";
  std::string out_path;

  WorkLimits limits() const { return WorkLimits{work_limit}; }
};

// The property a command checked did not hold; the report is still printed.
struct Outcome {
  Json report;
  bool property_holds = true;
};

// "a/b", an integer, or a finite decimal like "0.1", exactly.
Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt den(text.substr(slash + 1));
      require(den != 0, "zero denominator in " + text);
      return Rational(BigInt(text.substr(0, slash)), den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(BigInt(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const auto places = static_cast<unsigned>(text.size() - dot - 1);
    if (digits.empty() || digits == "-") digits += "0";
    return Rational(BigInt(digits), pow(BigInt(10), places));
  } catch (const InvalidArgument&) {
    throw;
  } catch (const std::exception&) {
    throw InvalidArgument("not a rational number: " + text);
  }
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

template <class T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  for (const auto& part : split(text)) {
    try {
      std::size_t used = 0;
      if constexpr (std::is_signed_v<T>) {
        out.push_back(static_cast<T>(std::stoll(part, &used)));
      } else {
        require(part.front() != '-', "negative value in " + text);
        out.push_back(static_cast<T>(std::stoull(part, &used)));
      }
      require(used == part.size(), "not an integer: " + part);
    } catch (const InvalidArgument&) {
      throw;
    } catch (const std::exception&) {
      throw InvalidArgument("not an integer: " + part);
    }
  }
  return out;
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& part : split(text)) out.push_back(parse_rational(part));
  return out;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidArgument(path + ": malformed JSON: " + e.what());
  }
}

std::string csv_cell(const Json& value) {
  std::string s = value.is_string() ? value.get<std::string>() : value.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

// One row per element of "rows" when present, otherwise one row for the object.
std::string to_csv(const Json& report) {
  std::vector<Json> rows;
  if (report.is_object() && report.contains("rows") && report["rows"].is_array()) {
    for (const auto& r : report["rows"]) rows.push_back(r);
  } else {
    rows.push_back(report);
  }
  std::vector<std::string> header;
  for (const auto& row : rows) {
    if (!row.is_object()) continue;
    for (const auto& [key, _] : row.items()) {
      if (std::find(header.begin(), header.end(), key) == header.end()) header.push_back(key);
    }
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) os << ',';
      if (row.is_object() && row.contains(header[i])) os << csv_cell(row[header[i]]);
    }
    os << '\n';
  }
  return os.str();
}

struct CosetFlags {
  std::string line;
  std::uint64_t q = 0;
  std::size_t k = 1;
  std::string shift;

  ThetaCoset build() const {
    if (!line.empty()) {
      auto parts = split(line);
      require(parts.size() == 2, "--line expects spacing,offset");
      return ThetaCoset::line(std::stod(parts[0]), std::stod(parts[1]));
    }
    require(q != 0, "give --line spacing,offset or --q/--k/--shift");
    auto h = build_parity_check(q, k);
    IntVector x = shift.empty() ? IntVector(h.length(), 0) : parse_list<std::int64_t>(shift);
    return ThetaCoset::parity(h, x);
  }
};

void add_coset_flags(CLI::App* cmd, CosetFlags& flags) {
  cmd->add_option("--line", flags.line, "one-dimensional coset spacing,offset");
  cmd->add_option("--q", flags.q, "prime for a parity-lattice coset");
  cmd->add_option("--k", flags.k, "rows of H_q(k, F_q)");
  cmd->add_option("--shift", flags.shift, "integer shift x, comma separated");
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reed-Solomon lattice toolkit"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  RunConfig config;
  app.add_option("--seed", config.seed, "random seed")->capture_default_str();
  app.add_option("--work-limit", config.work_limit, "cap on DP states and enumeration nodes")
      ->check(CLI::PositiveNumber);
  app.add_option("--tolerance", config.tolerance, "numerical tolerance for checked identities");
  app.add_option("--format", config.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", config.out_path, "write the report here instead of stdout");
  app.fallthrough();

  std::function<Outcome()> action;

  // lattice
  auto* lattice = app.add_subcommand("lattice", "parity-check lattices")->require_subcommand(1);
  std::uint64_t q = 0;
  std::size_t k = 0;
  std::string points;
  auto points_of = [&] { return points.empty() ? std::vector<std::uint64_t>{} : parse_list<std::uint64_t>(points); };

  auto* lat_build = lattice->add_subcommand("build", "H_q(k, S) and its lattice basis");
  lat_build->add_option("--q", q)->required();
  lat_build->add_option("--k", k)->required();
  lat_build->add_option("--points", points, "evaluation set S, comma separated");
  lat_build->callback([&] {
    action = [&] {
      auto h = build_parity_check(q, k, points_of());
      return Outcome{Json{{"parity_check", h}, {"basis", lattice_basis(h)}}};
    };
  });

  auto* lat_basis = lattice->add_subcommand("basis", "Hermite normal form basis");
  lat_basis->add_option("--q", q)->required();
  lat_basis->add_option("--k", k)->required();
  lat_basis->add_option("--points", points);
  lat_basis->callback([&] {
    action = [&] {
      auto basis = lattice_basis(build_parity_check(q, k, points_of()));
      const bool holds = basis.abs_determinant() <= pow(BigInt(q), static_cast<unsigned>(k));
      return Outcome{Json(basis), holds};
    };
  });

  int p = 1;
  std::string budget;
  auto* lat_min = lattice->add_subcommand("min-dist", "exact lambda_1^(p)^p up to a budget");
  lat_min->add_option("--q", q)->required();
  lat_min->add_option("--k", k)->required();
  lat_min->add_option("--p", p)->capture_default_str();
  lat_min->add_option("--budget", budget, "largest ||v||_p^p searched")->required();
  lat_min->add_option("--points", points);
  lat_min->callback([&] {
    action = [&] {
      auto h = build_parity_check(q, k, points_of());
      return Outcome{Json(min_dist_exact(h, p, parse_rational(budget), config.limits()))};
    };
  });

  // coset
  auto* coset = app.add_subcommand("coset", "weight-h binary vectors in a coset")->require_subcommand(1);
  std::size_t h = 0;
  std::string u_text;
  auto* coset_count = coset->add_subcommand("count", "exact count for one syndrome");
  coset_count->add_option("--q", q)->required();
  coset_count->add_option("--k", k)->required();
  coset_count->add_option("--h", h)->required();
  coset_count->add_option("--u", u_text, "syndrome, comma separated")->required();
  coset_count->add_option("--points", points);
  coset_count->callback([&] {
    action = [&] {
      auto hm = build_parity_check(q, k, points_of());
      Syndrome u{q, parse_list<std::uint64_t>(u_text)};
      require(u.values.size() == k, "--u must have k entries");
      return Outcome{Json(count_binary_coset_vectors(hm, u, h, config.limits()))};
    };
  });

  auto* coset_sample = coset->add_subcommand("sample", "random weight-h shift and its coset count");
  coset_sample->add_option("--q", q)->required();
  coset_sample->add_option("--k", k)->required();
  coset_sample->add_option("--h", h)->required();
  coset_sample->add_option("--points", points);
  coset_sample->callback([&] {
    action = [&] {
      auto hm = build_parity_check(q, k, points_of());
      auto x = sample_dense_shift(hm.length(), h, config.seed);
      auto count = count_binary_coset_vectors(hm, syndrome(hm, x), h, config.limits());
      auto pb = pigeonhole_bound(q, k, h, hm.length());
      return Outcome{Json{{"shift", x}, {"u", count.u}, {"count", count.count}, {"average", pb.ratio}}};
    };
  });

  // gadget
  auto* gadget = app.add_subcommand("gadget", "locally dense gadgets")->require_subcommand(1);
  std::size_t r = 1;
  std::string alpha = "3/4";
  std::size_t retries = 10;
  std::string in_path;
  auto* gadget_gen = gadget->add_subcommand("generate", "desk-mode gadget");
  gadget_gen->add_option("--q", q)->required();
  gadget_gen->add_option("--k", k)->required();
  gadget_gen->add_option("--r", r)->capture_default_str();
  gadget_gen->add_option("--p", p)->capture_default_str();
  gadget_gen->add_option("--alpha", alpha)->capture_default_str();
  gadget_gen->add_option("--retries", retries)->capture_default_str();
  gadget_gen->callback([&] {
    action = [&] {
      GadgetOptions options;
      options.retry_limit = retries;
      options.limits = config.limits();
      return Outcome{Json(generate_gadget(p, parse_rational(alpha), r, q, k, config.seed, options))};
    };
  });

  auto* gadget_verify = gadget->add_subcommand("verify", "exhaustive re-verification");
  gadget_verify->add_option("--in", in_path, "gadget JSON")->required();
  gadget_verify->callback([&] {
    action = [&] {
      auto g = read_json(in_path).get<LocallyDenseGadget>();
      auto check = verify_gadget(g, config.limits());
      return Outcome{Json(check), check.ok()};
    };
  });

  // reduce
  auto* reduce = app.add_subcommand("reduce", "GapCVP' to GapSVP")->require_subcommand(1);
  std::string cvp_path, gadget_path, gamma_prime = "1", beta_text;
  auto* reduce_build = reduce->add_subcommand("build", "map a CVP' instance through a gadget");
  reduce_build->add_option("--cvp", cvp_path, "CVP' instance JSON")->required();
  reduce_build->add_option("--gadget", gadget_path, "gadget JSON")->required();
  reduce_build->add_option("--gamma-prime", gamma_prime)->capture_default_str();
  reduce_build->add_option("--beta", beta_text, "default: simplest admissible value");
  reduce_build->callback([&] {
    action = [&] {
      auto cvp = read_json(cvp_path).get<GapCVPPrimeInstance>();
      auto g = read_json(gadget_path).get<LocallyDenseGadget>();
      const Rational gp = parse_rational(gamma_prime);
      auto iv = admissible_beta_interval(cvp.p, g.alpha, cvp.gamma, gp, cvp.s_pow_p, g.ell);
      const Rational beta = beta_text.empty() ? choose_beta(cvp.p, iv, true) : parse_rational(beta_text);
      Json report = build_svp_instance(cvp, g, gp, beta);
      report["beta"] = beta;
      report["beta_interval"] = {{"lo", iv.lo}, {"hi", iv.hi}};
      return Outcome{report};
    };
  });

  auto* verify_cvp = reduce->add_subcommand("verify-cvp", "exhaustive CVP' verdict");
  verify_cvp->add_option("--in", in_path)->required();
  verify_cvp->callback([&] {
    action = [&] {
      return Outcome{Json(verify_cvp_instance(read_json(in_path).get<GapCVPPrimeInstance>(), config.limits()))};
    };
  });

  auto* verify_svp = reduce->add_subcommand("verify-svp", "exhaustive SVP verdict");
  verify_svp->add_option("--in", in_path)->required();
  verify_svp->callback([&] {
    action = [&] {
      return Outcome{Json(verify_svp_instance(read_json(in_path).get<GapSVPInstance>(), config.limits()))};
    };
  });

  // decode
  auto* decode = app.add_subcommand("decode", "Reed-Solomon and lattice decoding")->require_subcommand(1);
  std::size_t dim = 1;
  std::string eps = "1/10", received;
  auto* decode_rs = decode->add_subcommand("rs", "l2 list decoding on the torus");
  decode_rs->add_option("--q", q)->required();
  decode_rs->add_option("--dim", dim, "code dimension")->required();
  decode_rs->add_option("--eps", eps)->capture_default_str();
  decode_rs->add_option("--received", received, "coordinates, comma separated rationals")->required();
  decode_rs->add_option("--points", points);
  decode_rs->callback([&] {
    action = [&] {
      RSCode code(q, dim, points_of());
      TorusVector y(q, parse_rationals(received));
      ListDecodeOptions options;
      options.limits = config.limits();
      auto list = rs_list_decode_l2(code, parse_rational(eps), y, options);
      return Outcome{Json(list), list.certified};
    };
  });

  auto* decode_lat = decode->add_subcommand("lattice", "list decoding in the parity-check lattice");
  decode_lat->add_option("--q", q)->required();
  decode_lat->add_option("--k", k)->required();
  decode_lat->add_option("--eps", eps)->capture_default_str();
  decode_lat->add_option("--y", received, "target, comma separated rationals")->required();
  decode_lat->callback([&] {
    action = [&] {
      ListDecodeOptions options;
      options.limits = config.limits();
      auto list = lattice_decode_minkowski(q, k, parse_rational(eps), parse_rationals(received), options);
      return Outcome{Json(list), list.certified};
    };
  });

  auto* mink = decode->add_subcommand("minkowski-report", "bounds at k = floor(q / (2 log2 q))");
  mink->add_option("--q", q)->required();
  mink->callback([&] {
    action = [&] {
      auto m = minkowski_report(q);
      return Outcome{Json(m), m.chain_holds};
    };
  });

  // derand
  auto* derand = app.add_subcommand("derand", "derandomization experiments")->require_subcommand(1);
  auto* rw = derand->add_subcommand("received-word", "syndrome to received word");
  rw->add_option("--q", q)->required();
  rw->add_option("--k", k)->required();
  rw->add_option("--h", h)->required();
  rw->add_option("--u", u_text)->required();
  rw->add_option("--points", points);
  rw->callback([&] {
    action = [&] {
      auto hm = build_parity_check(q, k, points_of());
      Syndrome u{q, parse_list<std::uint64_t>(u_text)};
      auto word = received_word_from_syndrome(hm, h, u);
      const auto agreeing = count_agreeing_codewords(q, hm.points(), h - k + 1, word, h, config.limits());
      const auto cosets = count_binary_coset_vectors(hm, u, h, config.limits()).count;
      return Outcome{Json{{"r", word}, {"agreeing_codewords", agreeing}, {"coset_count", cosets}},
                     BigInt(agreeing) >= cosets};
    };
  });

  std::string coeffs;
  std::optional<std::size_t> charsum_k;
  auto* cs = derand->add_subcommand("charsum", "complete additive character sum");
  cs->add_option("--q", q)->required();
  cs->add_option("--coeffs", coeffs, "coefficients, lowest degree first")->required();
  cs->add_option("--k", charsum_k, "degree bound; default deg + 1");
  cs->callback([&] {
    action = [&] {
      auto res = character_sum(FieldPoly(PrimeField(q), parse_list<std::uint64_t>(coeffs)), charsum_k);
      return Outcome{Json(res), res.weil_holds};
    };
  });

  std::string s_text;
  auto* conv = derand->add_subcommand("convcount", "ordered h-tuples of columns summing to s");
  conv->add_option("--q", q)->required();
  conv->add_option("--k", k)->required();
  conv->add_option("--h", h)->required();
  conv->add_option("--s", s_text, "syndrome; omit for every syndrome");
  conv->callback([&] {
    action = [&] {
      SyndromeSpace space(q, k);
      auto table = sequence_count_table(q, k, h, config.limits());
      if (!s_text.empty()) {
        auto s = parse_list<std::uint64_t>(s_text);
        require(s.size() == k, "--s must have k entries");
        for (auto& v : s) v %= q;
        return Outcome{Json{{"s", s}, {"count", table[space.encode(s)]}}};
      }
      Json rows = Json::array();
      BigInt total = 0;
      for (std::uint64_t i = 0; i < table.size(); ++i) {
        rows.push_back({{"s", space.decode(i)}, {"count", table[i]}});
        total += table[i];
      }
      return Outcome{Json{{"rows", rows}, {"total", total}}, total == pow(BigInt(q), static_cast<unsigned>(h))};
    };
  });

  auto* fid = derand->add_subcommand("fourier-id", "main term plus character correction");
  fid->add_option("--q", q)->required();
  fid->add_option("--k", k)->required();
  fid->add_option("--h", h)->required();
  fid->add_option("--s", s_text, "syndrome; omit for every syndrome");
  fid->callback([&] {
    action = [&] {
      SyndromeSpace space(q, k);
      auto table = fourier_count_table(q, k, h, config.limits());
      double worst = 0;
      for (const auto& d : table) worst = std::max(worst, d.reconciliation_error);
      Json report;
      if (!s_text.empty()) {
        auto s = parse_list<std::uint64_t>(s_text);
        require(s.size() == k, "--s must have k entries");
        for (auto& v : s) v %= q;
        report = table[space.encode(s)];
        report["s"] = s;
      } else {
        Json rows = Json::array();
        for (std::uint64_t i = 0; i < table.size(); ++i) {
          Json row = table[i];
          row["s"] = space.decode(i);
          rows.push_back(row);
        }
        report = {{"rows", rows}};
      }
      report["worst_reconciliation_error"] = round12(worst);
      if (k >= 1) report["barrier"] = fourier_barrier(q, k);
      return Outcome{report, worst <= config.tolerance};
    };
  });

  CosetFlags coset_flags;
  double tau = 1, delta = 0.1, radius = 1;
  std::string taus;
  auto* th = derand->add_subcommand("theta", "theta function of a coset");
  th->add_option("--p", p)->capture_default_str();
  th->add_option("--tau", tau)->required();
  th->add_option("--derivatives", taus, "tau grid for finite-difference checks");
  add_coset_flags(th, coset_flags);
  th->callback([&] {
    action = [&] {
      auto c = coset_flags.build();
      auto prof = theta(p, tau, c, std::min(config.tolerance, 1e-6), config.limits());
      Json report = prof;
      bool holds = prof.theta >= prof.largest_term;
      if (!taus.empty()) {
        std::vector<double> grid;
        for (const auto& t : split(taus)) grid.push_back(std::stod(t));
        Json rows = Json::array();
        for (const auto& pt : theta_derivative_checks(p, grid, c)) {
          rows.push_back(pt);
          holds = holds && pt.second_difference > 0 &&
                  std::abs(pt.first_difference - pt.minus_mu) <= config.tolerance &&
                  std::abs(pt.second_difference - pt.variance) <= 10 * config.tolerance;
        }
        report["derivatives"] = rows;
      }
      return Outcome{report, holds};
    };
  });

  auto* np = derand->add_subcommand("np-bounds", "N_p(r) against its theta bounds");
  np->add_option("--p", p)->capture_default_str();
  np->add_option("--r", radius)->required();
  np->add_option("--tau", tau)->required();
  np->add_option("--delta", delta)->capture_default_str();
  add_coset_flags(np, coset_flags);
  np->callback([&] {
    action = [&] {
      auto b = np_bounds(p, radius, coset_flags.build(), tau, delta, std::min(config.tolerance, 1e-6),
                         config.limits());
      return Outcome{Json(b), b.upper_holds && b.lower_holds};
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  if (!action) {
    err << "error: no command\n";
    return 2;
  }

  Outcome outcome;
  try {
    outcome = action();
  } catch (const VerificationFailed& e) {
    err << "verification failed: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Json::exception& e) {
    err << "error: bad JSON input: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: bad number: " << e.what() << '\n';
    return 2;
  }

  const std::string text = config.format == "csv" ? to_csv(outcome.report) : outcome.report.dump(2) + "\n";
  if (config.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(config.out_path);
    if (!file) {
      err << "error: cannot write " << config.out_path << '\n';
      return 2;
    }
    file << text;
  }
  return outcome.property_holds ? 0 : 1;
}

}  // namespace rslat::cli
