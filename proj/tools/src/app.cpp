#include "leechps/cli/app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "leechps/arith.hpp"
#include "leechps/cache.hpp"
#include "leechps/cli/suites.hpp"
#include "leechps/enumerate.hpp"
#include "leechps/exp_sums.hpp"
#include "leechps/fourier.hpp"
#include "leechps/lattice.hpp"
#include "leechps/lorentz.hpp"

namespace leechps::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Globals {
  std::uint64_t max_cosets = std::uint64_t{1} << 25;
  double max_seconds = 60.0;
  bool deterministic = false;
  std::string cache_dir;
  std::string format = "json";
  bool max_seconds_set = false;

  Budget budget() const {
    Budget b = Budget::with_seconds(max_seconds);
    b.max_cosets = max_cosets;
    return b;
  }
};

// What a command produced, before it is rendered.
struct Outcome {
  std::string op;
  json params = json::object();
  std::optional<Complex> value;
  std::string method;
  std::uint64_t terms = 0;
  std::optional<double> tail;
  std::uint64_t cache_hits = 0;
  std::string status = "ok";
  json result = json::object();
  ExitCode code = ExitCode::kOk;
  // CSV rendering; when empty a one-row summary is written.
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

json tail_json(double t) { return std::isfinite(t) ? json(t) : json(nullptr); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

lattice::Coords parse_coords(const std::string& text, int rank, const char* what) {
  if (text == "0") return lattice::Coords(rank, 0);
  lattice::Coords out;
  for (const auto& part : split(text, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": '" + part + "' is not an integer");
    }
  }
  if (static_cast<int>(out.size()) != rank)
    throw UsageError(std::string(what) + " needs " + std::to_string(rank) + " coordinates, got " +
                     std::to_string(out.size()));
  return out;
}

std::vector<double> parse_point(const std::string& text, int rank) {
  if (text == "0") return std::vector<double>(rank, 0.0);
  if (text == "generic") {
    if (rank != 24) throw UsageError("--v generic is defined for rank 24 only");
    return generic_point();
  }
  std::vector<double> out;
  for (const auto& part : split(text, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError("--v: '" + part + "' is not a number");
    }
  }
  if (static_cast<int>(out.size()) != rank)
    throw UsageError("--v needs " + std::to_string(rank) + " coordinates, got " + std::to_string(out.size()));
  return out;
}

std::string coords_text(const lattice::Coords& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? " " : "") + std::to_string(x[i]);
  return s;
}

void fill_from_eval(Outcome& o, const EvalResult& r) {
  o.value = r.value;
  o.method = r.method;
  o.terms = r.terms;
  o.tail = r.tail_estimate;
}

json report_list(const std::vector<cache::FileReport>& reports) {
  json a = json::array();
  for (const auto& r : reports) a.push_back(cache::to_json(r));
  return a;
}

json envelope(const Outcome& o) {
  json j = {{"schemaVersion", kSchemaVersion}, {"op", o.op}, {"params", o.params}, {"status", o.status}};
  j["value"] = o.value ? complex_json(*o.value) : json(nullptr);
  j["method"] = o.method;
  j["terms"] = o.terms;
  j["diagnostics"] = {{"tail", o.tail ? tail_json(*o.tail) : json(nullptr)}, {"cacheHits", o.cache_hits}};
  j["result"] = o.result;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv(const Outcome& o, std::ostream& out) {
  auto row = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_escape(cells[i]);
    out << '\n';
  };
  if (!o.csv_header.empty()) {
    row(o.csv_header);
    for (const auto& r : o.csv_rows) row(r);
    return;
  }
  row({"op", "status", "method", "valueRe", "valueIm", "terms", "tail"});
  row({o.op, o.status, o.method, o.value ? num(o.value->real()) : "", o.value ? num(o.value->imag()) : "",
       std::to_string(o.terms), o.tail ? num(*o.tail) : ""});
}

// Strips runtime fields when --deterministic is set so repeated runs compare equal.
void scrub_runtime(json& j) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end();) {
      if (it.key() == "runtimeMs" || it.key() == "seconds" || it.key() == "directMs" || it.key() == "fourierMs") {
        it = j.erase(it);
      } else {
        scrub_runtime(*it);
        ++it;
      }
    }
  } else if (j.is_array()) {
    for (auto& x : j) scrub_runtime(x);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice, exponential-sum and Poincare-series computations", "leechps"};
  // --h is the slice height, so help is long-form only.
  app.set_help_flag("--help", "Print help and exit");
  app.require_subcommand(1);
  Globals g;
  app.add_option("--max-cosets", g.max_cosets, "Largest coset walk allowed")->check(CLI::PositiveNumber);
  auto* secs = app.add_option("--max-seconds", g.max_seconds, "Time budget per command")->check(CLI::PositiveNumber);
  app.add_flag("--deterministic", g.deterministic, "Sequential evaluation, runtime fields omitted");
  app.add_option("--cache-dir", g.cache_dir, "Directory for shell and coefficient caches")->envname("LEECHPS_CACHE_DIR");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::function<Outcome()> action;
  std::unique_ptr<cache::Store> store;
  auto open_store = [&]() -> cache::Store* {
    if (g.cache_dir.empty()) return nullptr;
    if (!store) store = std::make_unique<cache::Store>(g.cache_dir);
    return store.get();
  };

  // lattice
  auto* lat = app.add_subcommand("lattice", "Lattice descriptors and certificates");
  lat->require_subcommand(1);
  std::string lat_name = "leech";
  std::int64_t lat_radius = 4;
  auto* lat_info = lat->add_subcommand("info", "Describe a lattice");
  lat_info->add_option("--lattice", lat_name, "ii11, e8, leech, leech-permuted or '+'-joined sums");
  lat_info->callback([&] {
    action = [&] {
      Outcome o;
      o.op = "lattice.info";
      o.params = {{"lattice", lat_name}};
      o.result = lattice::descriptor_json(*lattice::named_lattice(lat_name));
      return o;
    };
  });
  auto* lat_cert = lat->add_subcommand("certify", "Enumerate and certify shells up to a radius");
  lat_cert->add_option("--lattice", lat_name, "Lattice name");
  lat_cert->add_option("--radius", lat_radius, "Largest norm to certify")->check(CLI::Range(0, 12));
  lat_cert->callback([&] {
    action = [&] {
      Outcome o;
      o.op = "lattice.certify";
      o.params = {{"lattice", lat_name}, {"radius", lat_radius}};
      const auto k = lattice::named_lattice(lat_name);
      auto* st = open_store();
      std::map<std::int64_t, std::uint64_t> counts;
      bool from_cache = st != nullptr;
      if (st) {
        for (std::int64_t nrm = 2; nrm <= lat_radius && from_cache; nrm += 2) {
          auto shell = st->load_shell(*k, nrm);
          if (!shell) from_cache = false;
          else counts[nrm] = shell->size();
        }
        if (from_cache) {
          counts[0] = 1;
          o.cache_hits = st->hits();
        }
      }
      if (!from_cache) {
        counts.clear();
        const std::vector<double> zero(k->rank(), 0.0);
        std::map<std::int64_t, std::vector<lattice::Coords>> shells;
        lattice::ShortVectorEnumerator en(*k);
        const auto budget = g.budget();
        const auto total = en.visit(zero, static_cast<double>(lat_radius), budget,
                                    [&](std::span<const std::int64_t> x, std::int64_t nrm, double) {
                                      ++counts[nrm];
                                      if (st && nrm > 0) shells[nrm].emplace_back(x.begin(), x.end());
                                    });
        o.terms = total;
        if (st)
          for (std::int64_t nrm = 2; nrm <= lat_radius; nrm += 2) st->save_shell(*k, nrm, shells[nrm]);
      }
      // Agreement with any earlier certificate is enforced here.
      k->attach_shell_certificate(counts, lat_radius);
      json shell_json = json::object();
      for (const auto& [nrm, cnt] : counts) shell_json[std::to_string(nrm)] = cnt;
      o.method = from_cache ? "cache" : "enumeration";
      o.result = lattice::descriptor_json(*k);
      o.result["shells"] = shell_json;
      return o;
    };
  });

  // sums
  auto* sums = app.add_subcommand("sums", "Exponential sums");
  sums->require_subcommand(1);
  std::int64_t a = 1, b = 1, n = 1, kk = 1, q = 3, c = 1, d = 1, p = 2, cutoff = 100;
  double s_re = 30.0, s_im = 0.0;
  std::string method = "brute", lambda_text = "0", sum_lattice = "e8";
  std::vector<std::int64_t> exclude;

  auto* kl = sums->add_subcommand("kloosterman", "S(a, b, n)");
  kl->add_option("--a", a)->required();
  kl->add_option("--b", b)->required();
  kl->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  kl->callback([&] {
    action = [&] {
      Outcome o;
      o.op = "sums.kloosterman";
      o.params = {{"a", a}, {"b", b}, {"n", n}};
      const auto v = expsums::kloosterman(a, b, n);
      o.value = v.value;
      o.method = expsums::method_name(v.method);
      o.terms = v.terms;
      o.result = {{"weilBound", expsums::weil_bound(a, b, n)}};
      return o;
    };
  });

  auto* jt = sums->add_subcommand("jordan", "Jordan totient J_k(n)");
  jt->add_option("--k", kk)->required()->check(CLI::PositiveNumber);
  jt->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  jt->callback([&] {
    action = [&] {
      Outcome o;
      o.op = "sums.jordan";
      o.params = {{"k", kk}, {"n", n}};
      const auto v = arith::jordan_totient(static_cast<int>(kk), n);
      o.value = Complex(arith::to_double(v), 0.0);
      o.method = "closed";
      o.result = {{"exact", v.str()}};
      return o;
    };
  });

  auto* th = sums->add_subcommand("theta", "Gauss sum theta_{q,c}(K)");
  th->add_option("--lattice", sum_lattice);
  th->add_option("--q", q)->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 30));
  th->add_option("--c", c);
  th->add_option("--method", method)->check(CLI::IsMember({"brute", "closed", "recursion"}));
  th->callback([&] {
    action = [&] {
      Outcome o;
      o.op = "sums.theta";
      o.params = {{"lattice", sum_lattice}, {"q", q}, {"c", c}, {"method", method}};
      const auto k = lattice::named_lattice(sum_lattice);
      expsums::SumValue v;
      if (method == "brute") {
        v = expsums::gauss_theta_brute(*k, q, c, g.budget());
      } else if (method == "closed") {
        v = expsums::gauss_theta_closed_odd(*k, q, c);
      } else {
        const auto pp = arith::as_prime_power(q);
        if (pp.p != 2) throw UsageError("--method recursion needs q a power of 2");
        v = expsums::gauss_theta_even_recursion(*k, pp.r, c, g.budget());
      }
      o.value = v.value;
      o.method = method;
      o.terms = v.terms;
      o.result = {{"expectedSelfDual", std::pow(static_cast<double>(q), 0.5 * k->rank())}};
      return o;
    };
  });

  auto* js = sums->add_subcommand("j", "j_{lambda,n}(d)");
  js->add_option("--lattice", sum_lattice);
  js->add_option("--lambda", lambda_text, "Comma-separated coordinates, or 0");
  js->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  js->add_option("--d", d);
  js->add_option("--method", method)->check(CLI::IsMember({"brute", "closed"}));
  js->callback([&] {
    action = [&] {
      Outcome o;
      o.op = "sums.j";
      o.params = {{"lattice", sum_lattice}, {"lambda", lambda_text}, {"n", n}, {"d", d}, {"method", method}};
      const auto k = lattice::named_lattice(sum_lattice);
      const auto lam = parse_coords(lambda_text, k->rank(), "--lambda");
      expsums::SumValue v;
      if (method == "closed") {
        if (d != 1) throw UsageError("the closed form is for d = 1");
        v = expsums::j_closed(*k, lam, n);
      } else {
        v = expsums::j_brute(*k, lam, n, d, g.budget());
      }
      o.value = v.value;
      o.method = method;
      o.terms = v.terms;
      return o;
    };
  });

  auto* dir = sums->add_subcommand("dirichlet", "Partial Dirichlet series of j");
  dir->add_option("--lattice", sum_lattice);
  dir->add_option("--lambda", lambda_text);
  dir->add_option("--s", s_re)->required();
  dir->add_option("--s-im", s_im);
  dir->add_option("--cutoff", cutoff)->check(CLI::PositiveNumber);
  dir->add_option("--exclude", exclude, "Primes whose multiples are skipped");
  dir->callback([&] {
    action = [&] {
      Outcome o;
      o.op = "sums.dirichlet";
      o.params = {{"lattice", sum_lattice}, {"lambda", lambda_text}, {"s", {s_re, s_im}}, {"cutoff", cutoff},
                  {"exclude", exclude}};
      const auto k = lattice::named_lattice(sum_lattice);
      const auto r = expsums::dirichlet_j_partial(*k, parse_coords(lambda_text, k->rank(), "--lambda"),
                                                  Complex(s_re, s_im), cutoff, exclude);
      fill_from_eval(o, r);
      o.result = to_json(r, !g.deterministic);
      return o;
    };
  });

  auto* hen = sums->add_subcommand("hensel", "Fibre sizes of M_pq(d) over M_q(d)");
  hen->add_option("--lattice", sum_lattice);
  hen->add_option("--p", p)->required();
  hen->add_option("--q", q)->required();
  hen->add_option("--d", d);
  hen->callback([&] {
    action = [&] {
      Outcome o;
      o.op = "sums.hensel";
      o.params = {{"lattice", sum_lattice}, {"p", p}, {"q", q}, {"d", d}};
      const auto k = lattice::named_lattice(sum_lattice);
      const auto r = expsums::hensel_fiber_check(*k, p, q, d, g.budget());
      o.method = "brute";
      o.terms = r.total;
      o.result = {{"expectedFiber", r.expected_fiber}, {"baseSize", r.base_size}, {"fibers", r.fibers},
                  {"minFiber", r.min_fiber},           {"maxFiber", r.max_fiber},   {"total", r.total},
                  {"ok", r.ok}};
      if (!r.ok) o.status = "error", o.code = ExitCode::kInternal;
      return o;
    };
  });

  // geometry
  auto* geo = app.add_subcommand("geometry", "Roots and the Weyl chamber");
  geo->require_subcommand(1);
  double k_param = 1.0, h_param = 0.5, radius_sq = 1.0;
  std::string v_text = "0", geo_lattice = "leech";
  auto* roots = geo->add_subcommand("roots", "Roots of height n with l/n near v");
  roots->add_option("--lattice", geo_lattice);
  roots->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  roots->add_option("--v", v_text);
  roots->add_option("--radius-sq", radius_sq)->check(CLI::NonNegativeNumber);
  roots->callback([&] {
    action = [&] {
      Outcome o;
      o.op = "geometry.roots";
      o.params = {{"lattice", geo_lattice}, {"n", n}, {"v", v_text}, {"radiusSq", radius_sq}};
      const auto k = lattice::named_lattice(geo_lattice);
      const auto rs = lorentz::roots_of_height_near(*k, n, parse_point(v_text, k->rank()), radius_sq, g.budget());
      json arr = json::array();
      o.csv_header = {"l", "height", "nCoord"};
      for (const auto& r : rs) {
        arr.push_back({{"l", r.l}, {"height", r.height}, {"nCoord", r.n_coord}});
        o.csv_rows.push_back({coords_text(r.l), std::to_string(r.height), std::to_string(r.n_coord)});
      }
      o.terms = rs.size();
      o.method = "enumeration";
      o.result = {{"roots", arr}};
      return o;
    };
  });
  auto* ch = geo->add_subcommand("chamber", "Smallest -<s_lambda, phi(v)> over nearby lambda");
  ch->add_option("--lattice", geo_lattice);
  ch->add_option("--k", k_param);
  ch->add_option("--h", h_param);
  ch->add_option("--v", v_text);
  ch->add_option("--radius-sq", radius_sq)->check(CLI::NonNegativeNumber);
  ch->callback([&] {
    action = [&] {
      Outcome o;
      o.op = "geometry.chamber";
      o.params = {{"lattice", geo_lattice}, {"k", k_param}, {"h", h_param}, {"v", v_text}, {"radiusSq", radius_sq}};
      const auto k = lattice::named_lattice(geo_lattice);
      const lorentz::SliceParams sp(k_param, h_param);
      const double margin = lorentz::chamber_margin(*k, parse_point(v_text, k->rank()), sp, radius_sq, g.budget());
      o.value = Complex(margin, 0.0);
      o.method = "enumeration";
      o.result = {{"margin", tail_json(margin)}, {"kappa", sp.kappa()}};
      return o;
    };
  });

  // poincare
  auto* pc = app.add_subcommand("poincare", "Poincare series and Fourier coefficients");
  pc->require_subcommand(1);
  TruncationPolicy policy;
  std::string pc_lattice = "leech", eval_method = "fourier";
  double shell_radius = -1.0;
  bool theta_bulk = true;
  auto add_policy = [&](CLI::App* sub) {
    sub->add_option("--n-max", policy.n_max, "Cutoff of the n-sums")->check(CLI::NonNegativeNumber);
    sub->add_option("--lambda-radius-sq", policy.lambda_radius_sq, "Explicit lambda shell")->check(CLI::NonNegativeNumber);
    sub->add_option("--quad-tol", policy.quad_tol)->check(CLI::PositiveNumber);
    sub->add_option("--tol", policy.tol, "Relative tail target")->check(CLI::PositiveNumber);
  };
  auto policy_json = [&] { return to_json(policy); };

  auto* coeff = pc->add_subcommand("coeff", "Fourier coefficient a_lambda(k, h, s)");
  coeff->add_option("--lattice", pc_lattice);
  coeff->add_option("--k", k_param);
  coeff->add_option("--h", h_param);
  coeff->add_option("--s", s_re)->required();
  coeff->add_option("--s-im", s_im);
  coeff->add_option("--lambda", lambda_text, "Comma-separated coordinates, or 0");
  coeff->add_option("--shell-radius", shell_radius, "Tabulate every lambda with lambda^2 <= radius");
  add_policy(coeff);
  coeff->callback([&] {
    action = [&] {
      Outcome o;
      o.op = "poincare.coeff";
      o.params = {{"lattice", pc_lattice}, {"k", k_param}, {"h", h_param}, {"s", {s_re, s_im}},
                  {"policy", policy_json()}};
      const auto k = lattice::named_lattice(pc_lattice);
      const lorentz::SliceParams sp(k_param, h_param);
      const Complex s(s_re, s_im);
      auto* st = open_store();
      auto coefficient = [&](const lattice::Coords& lam) {
        const std::int64_t nrm = lattice::norm(*k, lam);
        const auto content = lattice::content(lam);
        const analytic::CoeffKey key{k->hash(), k_param, h_param, s, policy.n_max, nrm / 2,
                                     content.is_all() ? 0 : *content.value};
        if (st) {
          if (auto hit = st->find(key)) {
            hit->lambda = lam;
            ++o.cache_hits;
            return *hit;
          }
        }
        auto r = analytic::fourier_coeff(*k, lam, sp, s, policy);
        if (st) st->insert(key, r);
        return r;
      };
      o.method = "closed";
      o.csv_header = {"lambdaCoords", "lambdaNormSq", "aRe", "aIm", "tailBound", "termsUsed"};
      auto add_row = [&](const analytic::CoeffResult& r) {
        o.csv_rows.push_back({coords_text(r.lambda), std::to_string(lattice::norm(*k, r.lambda)), num(r.a.real()),
                              num(r.a.imag()), std::isfinite(r.tail_bound) ? num(r.tail_bound) : "inf",
                              std::to_string(r.terms_used)});
      };
      if (shell_radius >= 0.0) {
        o.params["shellRadius"] = shell_radius;
        const std::vector<double> zero(k->rank(), 0.0);
        json rows = json::array();
        for (const auto& lam : lattice::short_vectors(*k, zero, shell_radius, g.budget())) {
          const auto r = coefficient(lam);
          rows.push_back(analytic::to_json(r));
          add_row(r);
        }
        o.terms = rows.size();
        o.result = {{"coefficients", rows}};
      } else {
        o.params["lambda"] = lambda_text;
        const auto r = coefficient(parse_coords(lambda_text, k->rank(), "--lambda"));
        o.value = r.a;
        o.tail = r.tail_bound;
        o.terms = static_cast<std::uint64_t>(r.terms_used);
        o.result = analytic::to_json(r);
        add_row(r);
      }
      return o;
    };
  });

  auto* ev = pc->add_subcommand("eval", "E(phi(v), s) on the slice ht = h");
  ev->add_option("--lattice", pc_lattice);
  ev->add_option("--k", k_param);
  ev->add_option("--h", h_param);
  ev->add_option("--s", s_re)->required();
  ev->add_option("--s-im", s_im);
  ev->add_option("--v", v_text, "Comma-separated coordinates, 0, or generic");
  ev->add_option("--method", eval_method)->check(CLI::IsMember({"direct", "fourier", "both"}));
  ev->add_flag("!--no-theta-bulk", theta_bulk, "Fourier route: sum only the explicit lambda shell");
  add_policy(ev);
  ev->callback([&] {
    action = [&] {
      Outcome o;
      o.op = "poincare.eval";
      o.params = {{"lattice", pc_lattice}, {"k", k_param},         {"h", h_param},
                  {"s", {s_re, s_im}},     {"v", v_text},          {"method", eval_method},
                  {"thetaBulk", theta_bulk}, {"policy", policy_json()}};
      const auto k = lattice::named_lattice(pc_lattice);
      const lorentz::SliceParams sp(k_param, h_param);
      const Complex s(s_re, s_im);
      const auto v = parse_point(v_text, k->rank());
      std::optional<EvalResult> direct, fourier;
      if (eval_method != "fourier") direct = lorentz::direct_poincare(*k, v, sp, s, policy, g.budget());
      if (eval_method != "direct") {
        analytic::FourierOptions fo;
        fo.theta_bulk = theta_bulk;
        fo.store = open_store();
        fourier = analytic::fourier_poincare(*k, v, sp, s, policy, g.budget(), fo);
        o.cache_hits = fourier->extra.value("cacheHits", std::uint64_t{0});
      }
      if (direct && fourier) {
        fill_from_eval(o, *fourier);
        o.method = "both";
        o.tail = std::max(direct->tail_estimate, fourier->tail_estimate);
        o.terms = direct->terms + fourier->terms;
        const double rel = std::abs(direct->value - fourier->value) / std::abs(fourier->value);
        o.result = {{"direct", to_json(*direct, !g.deterministic)},
                    {"fourier", to_json(*fourier, !g.deterministic)},
                    {"relDiff", rel}};
      } else {
        const auto& r = direct ? *direct : *fourier;
        fill_from_eval(o, r);
        o.result = to_json(r, !g.deterministic);
      }
      return o;
    };
  });

  // verify
  auto* ver = app.add_subcommand("verify", "Run oracle-equivalence suites");
  std::string suite = "all", ver_lattice;
  std::int64_t qmax = 0;
  ver->add_option("suite", suite, "Suite name or all")->required();
  ver->add_option("--lattice", ver_lattice, "Restrict lattice-indexed suites");
  ver->add_option("--qmax", qmax, "Largest modulus for the theta suite")->check(CLI::PositiveNumber);
  ver->callback([&] {
    action = [&] {
      Outcome o;
      o.op = "verify";
      json params = json::object();
      if (!ver_lattice.empty()) params["lattice"] = ver_lattice;
      if (qmax > 0) params["qmax"] = qmax;
      o.params = params;
      o.params["suite"] = suite;
      SuiteContext ctx;
      ctx.log = &err;
      if (g.max_seconds_set) ctx.max_seconds = g.max_seconds;
      std::vector<std::string> names;
      if (suite == "all") {
        for (const auto& s : suites()) names.push_back(s.name);
      } else {
        names.push_back(suite);
      }
      json reports = json::array();
      bool all_pass = true;
      o.csv_header = {"suite", "pass", "summary"};
      for (const auto& name : names) {
        const auto r = run_suite(name, ctx, params);
        all_pass &= r.pass;
        reports.push_back(to_json(r));
        o.csv_rows.push_back({name, r.pass ? "pass" : "fail", r.summary});
        ++o.terms;
      }
      o.method = "suite";
      o.result = {{"allPass", all_pass}, {"suites", reports}};
      if (!all_pass) {
        o.status = "error";
        o.code = ExitCode::kInternal;
      }
      return o;
    };
  });

  // cache
  auto* ca = app.add_subcommand("cache", "Inspect or clear the cache directory");
  ca->require_subcommand(1);
  for (const char* what : {"list", "clear", "verify"}) {
    auto* sub = ca->add_subcommand(what, std::string(what) + " cache files");
    sub->callback([&, what = std::string(what)] {
      action = [&, what] {
        Outcome o;
        o.op = "cache." + what;
        if (g.cache_dir.empty()) throw UsageError("no cache directory (use --cache-dir or LEECHPS_CACHE_DIR)");
        o.params = {{"cacheDir", g.cache_dir}};
        cache::Store st(g.cache_dir);
        o.method = "cache";
        o.csv_header = {"file", "kind", "records", "ok", "problem"};
        std::vector<cache::FileReport> reports;
        if (what == "clear") {
          o.terms = st.clear();
          o.result = {{"removed", o.terms}};
          return o;
        }
        reports = what == "list" ? st.list() : st.verify();
        bool ok = true;
        for (const auto& r : reports) {
          ok &= r.ok;
          o.csv_rows.push_back({r.file, r.kind, std::to_string(r.records), r.ok ? "true" : "false", r.problem});
        }
        o.terms = reports.size();
        o.result = {{"files", report_list(reports)}, {"allOk", ok}};
        if (!ok && what == "verify") {
          o.status = "error";
          o.code = ExitCode::kInternal;
        }
        return o;
      };
    });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "leechps: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kUsage);
  }
  g.max_seconds_set = secs->count() > 0;

  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = action();
  } catch (const PartialEvaluation& e) {
    o.status = "partial";
    o.code = ExitCode::kResource;
    fill_from_eval(o, e.partial());
    o.result = to_json(e.partial(), !g.deterministic);
    o.result["error"] = e.what();
    err << "leechps: " << e.what() << '\n';
  } catch (const Error& e) {
    o.status = "error";
    o.code = e.exit_code();
    o.result = {{"error", {{"kind", e.kind()}, {"message", e.what()}}}};
    if (const auto* r = dynamic_cast<const ResourceError*>(&e)) o.result["error"]["progress"] = r->partial_count();
    err << "leechps: " << e.kind() << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    o.status = "error";
    o.code = ExitCode::kInternal;
    o.result = {{"error", {{"kind", "internal"}, {"message", e.what()}}}};
    err << "leechps: " << e.what() << '\n';
  }
  if (o.op.empty()) {
    for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
      sub = sub->get_subcommands().front();
      o.op += (o.op.empty() ? "" : ".") + sub->get_name();
    }
  }
  if (store) {
    try {
      store->flush();
    } catch (const std::exception& e) {
      err << "leechps: cache write failed: " << e.what() << '\n';
    }
    for (const auto& r : store->rejected()) err << "leechps: ignored cache file " << r << '\n';
  }

  json env = envelope(o);
  env["diagnostics"]["runtimeMs"] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  if (g.deterministic) scrub_runtime(env);
  if (g.format == "csv" && o.status != "error") {
    write_csv(o, out);
  } else {
    out << env.dump(2) << '\n';
  }
  return static_cast<int>(o.code);
}

}  // namespace leechps::cli
