#include "kstab/abelian.hpp"
#include "kstab/carrier.hpp"
#include "kstab/defect.hpp"
#include "kstab/fn_config.hpp"
#include "kstab/limits.hpp"
#include "kstab/pattern.hpp"
#include "kstab/report.hpp"
#include "kstab/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fmt/core.h>

#include <fstream>
#include <iostream>
#include <random>

using nlohmann::json;
using namespace kstab;

namespace {

// Input problems (bad literals, unreadable files) exit with 2 and the usage
// text; failures during the computation itself exit with 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string carrier = "Z";
  std::string fn;
  std::string format = "table";
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-9;
  unsigned nmax = 40;
};

struct Output {
  json report;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  bool ok = true;
};

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

template <class F>
auto parse_input(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  } catch (const json::exception& e) {
    throw UsageError(e.what());
  }
}

Carrier carrier_of(const Common& c) {
  return parse_input([&] { return parse_carrier(c.carrier); });
}

RealFn fn_of(const Common& c, const Carrier& carrier) {
  if (c.fn.empty()) {
    throw UsageError("--fn is required");
  }
  return parse_input([&] { return load_fn(carrier, c.fn); });
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot read " + path);
  }
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') {
      continue;
    }
    out.push_back(line.substr(start));
  }
  return out;
}

std::vector<Element> read_corpus(const Carrier& carrier, const std::string& path) {
  std::vector<Element> out;
  for (const auto& line : read_lines(path)) {
    out.push_back(parse_input([&] { return parse_element(carrier, line); }));
  }
  if (out.empty()) {
    throw UsageError("corpus " + path + " is empty");
  }
  return out;
}

LimitOptions limit_options(const Common& c) {
  LimitOptions o;
  o.tol = c.tol;
  o.nmax = c.nmax;
  return o;
}

void stamp(json& report, const Common& c, const std::string& command) {
  report["command"] = command;
  report["seed"] = c.seed;
  report["tol"] = c.tol;
  report["nmax"] = c.nmax;
  if (!c.fn.empty()) {
    report["fn"] = c.fn;
  }
  report["carrier"] = c.carrier;
}

void print_table(const json& j, const std::string& prefix = "") {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      print_table(value, name);
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        print_table(value[i], name + "[" + std::to_string(i) + "]");
      }
    } else {
      fmt::print("{:<28} {}\n", name, cell(value));
    }
  }
}

void emit(const Output& out, const std::string& format) {
  if (format == "json") {
    std::cout << out.report.dump(2) << "\n";
  } else if (format == "csv") {
    if (out.csv_header.empty()) {
      fmt::print("key,value\n");
      for (const auto& [key, value] : out.report.items()) {
        if (!value.is_structured()) {
          fmt::print("{},{}\n", key, cell(value));
        }
      }
    } else {
      std::string header;
      for (const auto& h : out.csv_header) {
        header += (header.empty() ? "" : ",") + h;
      }
      fmt::print("{}\n", header);
      for (const auto& row : out.csv_rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
          const bool quote = row[i].find(',') != std::string::npos;
          line += (i ? "," : "") + (quote ? "\"" + row[i] + "\"" : row[i]);
        }
        fmt::print("{}\n", line);
      }
    }
  } else {
    print_table(out.report);
  }
}

void add_common(CLI::App* sub, Common& c, bool needs_fn) {
  sub->add_option("--carrier", c.carrier, "Carrier: Z, Z^k, Z/m, V4, F[ab], M[ab], Zero(..), Wr(..), Prod(..)")
      ->capture_default_str();
  auto* fn = sub->add_option("--fn", c.fn, "Function config: inline expression, JSON object or JSON file");
  if (needs_fn) {
    fn->required();
  }
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  sub->add_option("--tol", c.tol, "Absolute tolerance")->capture_default_str();
  sub->add_option("--nmax", c.nmax, "Maximum limit iterations")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kstab: Kannappan defect, dyadic limit and stability workbench"};
  app.require_subcommand(1);
  app.footer(
      "Element literals: words 'aabb' (unit '1' in monoids); vectors '3,-1,2'; residues '3';\n"
      "Klein elements 1, b, c, bc; wreath 'top|slot=value;...' e.g. '1|1=[2];b=[-1]';\n"
      "zero-adjoined '0' or the inner literal; products '(3)(1)'.");

  Common c;
  Output out;

  // defect
  auto* defect = app.add_subcommand("defect", "Kannappan defect at a triple or sup over a corpus");
  add_common(defect, c, true);
  std::string triple, corpus_file;
  std::size_t random_count = 0;
  std::optional<std::string> bound_text;
  defect->add_option("--triple", triple, "Three element literals");
  defect->add_option("--corpus", corpus_file, "File with one triple per line");
  defect->add_option("--random", random_count, "Sweep this many random triples");
  defect->add_option("--c", bound_text, "Defect bound to check against");

  // nfold
  auto* nfold = app.add_subcommand("nfold", "n-fold, power and square-compose defects with their bounds");
  add_common(nfold, c, true);
  std::string elements, power_point, square_triple;
  std::string nfold_n = "3", nfold_c = "0";
  nfold->add_option("--elements", elements, "n >= 3 element literals (n-fold defect)");
  nfold->add_option("--point", power_point, "Element for the power defect");
  nfold->add_option("--n", nfold_n, "Exponent for the power defect")->capture_default_str();
  nfold->add_option("--square", square_triple, "Triple for the square-compose defect");
  nfold->add_option("--c", nfold_c, "Defect bound c")->capture_default_str();

  // limit
  auto* limit = app.add_subcommand("limit", "Hat or tilde limit at a point");
  add_common(limit, c, true);
  std::string point, mode = "hat", path = "auto";
  unsigned base = 2;
  std::optional<std::string> doubling;
  limit->add_option("--point", point, "Element literal")->required();
  limit->add_option("--mode", mode, "hat or tilde")->check(CLI::IsMember({"hat", "tilde"}))->capture_default_str();
  limit->add_option("--path", path, "auto, iterative or closed-form")
      ->check(CLI::IsMember({"auto", "iterative", "closed-form"}))
      ->capture_default_str();
  limit->add_option("--base", base, "Power base (2 dyadic; 3, 5 m-adic check)")->capture_default_str();
  limit->add_option("--c", doubling, "Bound for |f(x^2) - 2f(x)| (tilde hypothesis)");

  // decompose
  auto* decomp = app.add_subcommand("decompose", "Quartic + linear + bounded decomposition over a corpus");
  add_common(decomp, c, true);
  decomp->add_option("--corpus", corpus_file, "File with one element literal per line")->required();

  // eta
  auto* eta = app.add_subcommand("eta", "Occurrences of aabb: count, power count, homogenized value");
  std::string word;
  std::string eta_power;
  bool tilde = false;
  eta->add_option("--word", word, "Word over {a, b}")->required();
  eta->add_option("--power", eta_power, "Count in word^(2^n)");
  eta->add_flag("--tilde", tilde, "Homogenized count");
  eta->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));

  // witness
  auto* witness = app.add_subcommand("witness", "Instability witness table");
  witness->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));

  // fit
  auto* fit = app.add_subcommand("fit", "Fit f(v) = v^T M v + a.v on Z^k from probe points");
  add_common(fit, c, true);
  std::size_t dim = 1;
  fit->add_option("--dim", dim, "Dimension k")->capture_default_str();

  // jung
  auto* jung = app.add_subcommand("jung", "Recover the quadratic part of an approximately even f on Z^k");
  add_common(jung, c, true);
  std::string theta = "0";
  std::optional<std::string> jung_defect;
  bool odd = false;
  jung->add_option("--corpus", corpus_file, "File with one element literal per line")->required();
  jung->add_option("--dim", dim, "Dimension k")->capture_default_str();
  jung->add_option("--theta", theta, "Evenness (or oddness) tolerance")->capture_default_str();
  jung->add_option("--defect", jung_defect, "Defect bound d (measured on random corpus triples if omitted)");
  jung->add_flag("--odd", odd, "Approximately odd f: recover the additive part");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  std::optional<int> only;
  verify->add_option("--only", only, "Run a single criterion");
  verify->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  verify->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (defect->parsed()) {
      stamp(out.report, c, "defect");
      const Carrier carrier = carrier_of(c);
      const RealFn f = fn_of(c, carrier);
      std::vector<Triple> triples;
      auto to_triple = [&](const std::string& text) {
        auto xs = parse_input([&] { return parse_element_list(carrier, text); });
        if (xs.size() != 3) {
          throw UsageError("a triple needs 3 elements, got " + std::to_string(xs.size()) + " in '" + text + "'");
        }
        return Triple{xs[0], xs[1], xs[2]};
      };
      if (!triple.empty()) {
        triples.push_back(to_triple(triple));
      }
      if (!corpus_file.empty()) {
        for (const auto& line : read_lines(corpus_file)) {
          triples.push_back(to_triple(line));
        }
      }
      std::mt19937_64 rng(c.seed);
      for (std::size_t i = 0; i < random_count; ++i) {
        triples.push_back({random_element(carrier, rng), random_element(carrier, rng), random_element(carrier, rng)});
      }
      if (triples.empty()) {
        throw UsageError("give --triple, --corpus or --random");
      }
      const DefectReport r = sup_defect(f, triples);
      out.report.update(to_json(r));
      out.report["bound"] = nullptr;
      if (bound_text) {
        const Number bound = parse_input([&] { return Number(parse_rational(*bound_text)); });
        out.report["bound"] = to_json(bound);
        out.ok = r.sup_estimate <= bound;
      }
      out.csv_header = {"x", "y", "z", "defect"};
      for (const Triple& t : triples) {
        out.csv_rows.push_back({to_string(t[0]), to_string(t[1]), to_string(t[2]),
                                cell(to_json(kannappan_defect(f, t[0], t[1], t[2])))});
      }
    } else if (nfold->parsed()) {
      stamp(out.report, c, "nfold");
      const Carrier carrier = carrier_of(c);
      const RealFn f = fn_of(c, carrier);
      const Number cb = parse_input([&] { return Number(parse_rational(nfold_c)); });
      if (elements.empty() && power_point.empty() && square_triple.empty()) {
        throw UsageError("give --elements, --point or --square");
      }
      if (!elements.empty()) {
        auto xs = parse_input([&] { return parse_element_list(carrier, elements); });
        if (xs.size() < 3) {
          throw UsageError("--elements needs at least 3 elements");
        }
        const auto v = nfold_defect(f, xs, cb);
        out.report["nfold"] = to_json(v);
        out.report["nfold"]["n"] = xs.size();
        out.ok = out.ok && v.within();
      }
      if (!power_point.empty()) {
        const Element x = parse_input([&] { return parse_element(carrier, power_point); });
        const Integer n = parse_input([&] { return Integer(parse_rational(nfold_n)); });
        if (n < 3) {
          throw UsageError("--n must be >= 3");
        }
        const auto v = power_defect(f, x, n, cb);
        out.report["power"] = to_json(v);
        out.report["power"]["n"] = n.get_str();
        out.ok = out.ok && v.within();
      }
      if (!square_triple.empty()) {
        auto xs = parse_input([&] { return parse_element_list(carrier, square_triple); });
        if (xs.size() != 3) {
          throw UsageError("--square needs 3 elements");
        }
        const auto v = square_compose_defect(f, xs[0], xs[1], xs[2], cb);
        out.report["square_compose"] = to_json(v);
        out.ok = out.ok && v.within();
      }
    } else if (limit->parsed()) {
      stamp(out.report, c, "limit");
      const Carrier carrier = carrier_of(c);
      const RealFn f = fn_of(c, carrier);
      const Element x = parse_input([&] { return parse_element(carrier, point); });
      LimitOptions o = limit_options(c);
      o.base = base;
      o.path = path == "iterative" ? LimitPath::Iterative : path == "closed-form" ? LimitPath::ClosedForm : LimitPath::Auto;
      if (doubling) {
        o.doubling_bound = parse_input([&] { return Number(parse_rational(*doubling)); });
      }
      const auto r = mode == "hat" ? hat_limit(f, x, o) : tilde_limit(f, x, o);
      out.report.update(to_json(r));
      out.report["mode"] = mode;
      out.report["point"] = to_string(x);
      out.report["base"] = base;
      out.csv_header = {"k", "a_k"};
      for (std::size_t k = 0; k < r.trace.size(); ++k) {
        out.csv_rows.push_back({std::to_string(k), cell(to_json(r.trace[k]))});
      }
    } else if (decomp->parsed()) {
      stamp(out.report, c, "decompose");
      const Carrier carrier = carrier_of(c);
      const RealFn f = fn_of(c, carrier);
      const auto corpus = read_corpus(carrier, corpus_file);
      const Decomposition d = decompose(f, corpus, limit_options(c));
      out.report.update(to_json(d));
      out.report["corpus"] = corpus_file;
      out.ok = !d.partial;
      out.csv_header = {"x", "f", "quartic", "linear", "remainder"};
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        out.csv_rows.push_back({to_string(corpus[i]), cell(to_json(d.values[i])), cell(to_json(d.quartic_values[i])),
                                cell(to_json(d.linear_values[i])), cell(to_json(d.remainders[i]))});
      }
    } else if (eta->parsed()) {
      out.report["command"] = "eta";
      const PatternCounter counter;
      const Word w = parse_input([&] { return Word(word); });
      const Integer count = parse_input([&] { return counter.count(w); });
      out.report["word"] = word;
      out.report["count"] = count.get_str();
      out.report["crossing"] = counter.crossing_count(w).get_str();
      if (!eta_power.empty()) {
        const unsigned long n = parse_input([&] {
          const Integer v = Integer(parse_rational(eta_power));
          if (v < 0 || v > 100000) {
            throw DomainError("--power must be in 0..100000");
          }
          return v.get_ui();
        });
        out.report["power"] = n;
        out.report["power_count"] = counter.dyadic_power_count(w, static_cast<unsigned>(n)).get_str();
      }
      if (tilde) {
        out.report["tilde"] = to_json(counter.tilde(w));
      }
      out.report["arithmetic"] = "exact";
    } else if (witness->parsed()) {
      const WitnessReport r = instability_witness();
      out.ok = r.passed;
      if (c.format == "table") {
        fmt::print("{:<6} {:>5} {:>6} {:>8} {:>9}\n", "word", "sign", "count", "tilde", "expected");
        for (const auto& row : r.rows) {
          fmt::print("{:<6} {:>5} {:>6} {:>8} {:>9}\n", row.word, row.coefficient > 0 ? "+" : "-",
                     row.count.get_str(), to_string(row.tilde), to_string(row.expected_tilde));
        }
        fmt::print("homogeneity of the homogenized count: {} ({} samples)\n",
                   r.homogeneity_holds ? "holds" : "FAILS", r.homogeneity_samples);
        fmt::print("plain count defect: {}\n", r.count_value.get_str());
        fmt::print("witness value: {}\n", to_string(r.value));
        return out.ok ? 0 : 1;
      }
      out.report = to_json(r);
      out.report["command"] = "witness";
      out.csv_header = {"word", "coefficient", "count", "tilde", "expected_tilde"};
      for (const auto& row : r.rows) {
        out.csv_rows.push_back({row.word, std::to_string(row.coefficient), row.count.get_str(), to_string(row.tilde),
                                to_string(row.expected_tilde)});
      }
    } else if (fit->parsed()) {
      if (c.carrier == "Z" && dim != 1) {
        c.carrier = "Z^" + std::to_string(dim);
      }
      stamp(out.report, c, "fit");
      const Carrier carrier = carrier_of(c);
      const RealFn f = fn_of(c, carrier);
      out.report.update(to_json(fit_quadratic_additive(f, dim)));
    } else if (jung->parsed()) {
      if (c.carrier == "Z" && dim != 1) {
        c.carrier = "Z^" + std::to_string(dim);
      }
      stamp(out.report, c, "jung");
      const Carrier carrier = carrier_of(c);
      const RealFn f = fn_of(c, carrier);
      const auto corpus = read_corpus(carrier, corpus_file);
      const Number th = parse_input([&] { return Number(parse_rational(theta)); });
      Number d;
      std::string defect_source;
      if (jung_defect) {
        d = parse_input([&] { return Number(parse_rational(*jung_defect)); });
        defect_source = "supplied";
      } else {
        std::mt19937_64 rng(c.seed);
        std::uniform_int_distribution<std::size_t> pick(0, corpus.size() - 1);
        std::vector<Triple> triples;
        for (int i = 0; i < 2000; ++i) {
          triples.push_back({corpus[pick(rng)], corpus[pick(rng)], corpus[pick(rng)]});
        }
        d = sup_defect(f, triples).sup_estimate;
        defect_source = "empirical";
      }
      const JungResult r = odd ? jung_recover_odd(f, dim, corpus, d, th, limit_options(c))
                               : jung_recover(f, dim, corpus, d, th, limit_options(c));
      out.report.update(to_json(r));
      out.report["defect"] = to_json(d);
      out.report["defect_source"] = defect_source;
      out.report["theta"] = to_json(th);
      out.ok = r.passed;
    } else if (verify->parsed()) {
      std::vector<CriterionResult> results;
      if (only) {
        results.push_back(run_criterion(*only, c.seed));
      } else {
        for (int id = 1; id <= kCriterionCount; ++id) {
          results.push_back(run_criterion(id, c.seed));
          if (c.format == "table") {
            std::cout << format_result(results.back()) << std::endl;
          }
        }
      }
      for (const auto& r : results) {
        out.ok = out.ok && r.passed;
      }
      if (c.format == "table") {
        if (only) {
          std::cout << format_result(results.front()) << "\n";
        }
        return out.ok ? 0 : 1;
      }
      out.report["command"] = "verify";
      out.report["seed"] = c.seed;
      out.report["criteria"] = json::array();
      out.csv_header = {"id", "passed", "seconds", "budget", "title"};
      for (const auto& r : results) {
        // Runtimes vary between runs; they stay out of the JSON report so it
        // is reproducible byte for byte.
        out.report["criteria"].push_back(
            {{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}, {"budget", r.budget}});
        out.csv_rows.push_back({std::to_string(r.id), r.passed ? "true" : "false", fmt::format("{:.3f}", r.seconds),
                                fmt::format("{:.0f}", r.budget), r.title});
      }
    }
  } catch (const UsageError& e) {
    const auto active = app.get_subcommands();
    std::cerr << "error: " << e.what() << "\n\n" << (active.empty() ? app.help() : active.front()->help()) << std::flush;
    return 2;
  } catch (const std::exception& e) {
    json failure = {{"error", e.what()}, {"ok", false}};
    std::cout << failure.dump(2) << "\n";
    return 1;
  }

  out.report["ok"] = out.ok;
  if (!out.report.contains("seed")) {
    out.report["seed"] = c.seed;
  }
  if (!out.report.contains("tol")) {
    out.report["tol"] = c.tol;
  }
  emit(out, c.format);
  return out.ok ? 0 : 1;
}
