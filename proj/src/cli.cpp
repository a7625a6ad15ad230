#include "maxcurves/cli.hpp"

#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "maxcurves/cubic_families.hpp"
#include "maxcurves/degree_bound.hpp"
#include "maxcurves/diophantine.hpp"
#include "maxcurves/exact_arith.hpp"
#include "maxcurves/output.hpp"
#include "maxcurves/search.hpp"
#include "maxcurves/supersingular.hpp"

namespace maxcurves::cli {

namespace {

struct OutputOptions {
  std::string format = "csv";
  std::string path;
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_option("--out", opts.path, "Write output to FILE instead of stdout");
}

// Resolves --out; the returned stream lives as long as the holder.
class Sink {
 public:
  Sink(const OutputOptions& opts, std::ostream& fallback) : stream_(&fallback) {
    if (!opts.path.empty()) {
      file_ = std::make_unique<std::ofstream>(opts.path);
      if (!*file_) throw std::invalid_argument("cannot open output file " + opts.path);
      stream_ = file_.get();
    }
    format_ = opts.format == "jsonl" ? Format::Jsonl : Format::Csv;
  }
  std::ostream& stream() { return *stream_; }
  Format format() const { return format_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
  Format format_ = Format::Csv;
};

std::string describe_degrees(const std::vector<std::uint64_t>& degrees) {
  if (degrees.empty()) return "none";
  std::string s;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(degrees[i]);
  }
  return s;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

mpq_class parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    mpq_class r;
    if (r.set_str(text, 10) != 0 || sgn(r.get_den()) == 0) {
      throw std::invalid_argument("malformed fraction: " + text);
    }
    r.canonicalize();
    return r;
  }
  std::string mantissa = text;
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
    mantissa = text.substr(0, e);
    try {
      std::size_t used = 0;
      exponent = std::stol(text.substr(e + 1), &used);
      if (used != text.size() - e - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent: " + text);
    }
  }
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  for (std::size_t i = 0; i < mantissa.size(); ++i) {
    const char ch = mantissa[i];
    if (ch == '-' && i == 0) {
      digits += ch;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      digits += ch;
      if (seen_point) ++scale;
    } else {
      throw std::invalid_argument("malformed number: " + text);
    }
  }
  if (digits.empty() || digits == "-") throw std::invalid_argument("malformed number: " + text);
  mpq_class r{mpz_class(digits, 10)};
  const long shift = exponent - scale;
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift < 0) {
    r /= mpq_class(power);
  } else {
    r *= mpq_class(power);
  }
  r.canonicalize();
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximal elliptic curves over finite field extensions"};
  app.require_subcommand(1);

  // check
  std::int64_t q = 0;
  std::int64_t a1 = 0;
  std::uint64_t n = 0;
  auto* check = app.add_subcommand("check", "Exact test of -a_n == floor(2 sqrt(q)^n)");
  check->add_option("q", q)->required();
  check->add_option("a1", a1)->required();
  check->add_option("n", n)->required()->check(CLI::PositiveNumber);

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Ordinary/supersingular and maximal degrees");
  classify_cmd->add_option("q", q)->required();
  classify_cmd->add_option("a1", a1)->required();

  // bound
  OutputOptions bound_out;
  auto* bound = app.add_subcommand("bound", "Degree cutoff ceil(N_q) with its bracket");
  bound->add_option("q", q)->required();
  add_output_options(bound, bound_out);

  // convergents
  OutputOptions conv_out;
  std::uint64_t limit = 0;
  auto* conv = app.add_subcommand("convergents", "Convergents of theta/pi with parity flags");
  conv->add_option("q", q)->required();
  conv->add_option("a1", a1)->required();
  conv->add_option("--limit", limit, "Denominator cap (default: the degree cutoff)");
  add_output_options(conv, conv_out);

  // search
  OutputOptions search_out;
  SearchConfig cfg;
  auto* search = app.add_subcommand("search", "Enumerate maximal triples over prime powers");
  search->add_option("--qmin", cfg.q_min)->required();
  search->add_option("--qmax", cfg.q_max)->required();
  search->add_flag("--include-supersingular", cfg.include_supersingular);
  search->add_option("--jobs", cfg.parallelism)->check(CLI::PositiveNumber);
  search->add_flag("--verify,!--no-verify", cfg.verify, "Re-check each triple exactly");
  add_output_options(search, search_out);

  // cubic
  auto* cubic = app.add_subcommand("cubic", "Degree-3 families");
  cubic->require_subcommand(1);
  OutputOptions cubic_out;
  std::int64_t a_max = 0;
  std::string theta_text = "0.119";
  unsigned jobs = 1;
  auto* soomro = cubic->add_subcommand("soomro", "Triples (a1^2 + b, a1, 3) with b^2 <= a1");
  soomro->add_option("--amax", a_max)->required();
  soomro->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  add_output_options(soomro, cubic_out);
  auto* candidates = cubic->add_subcommand("candidates", "Possible a1 for degree 3");
  candidates->add_option("q", q)->required();
  add_output_options(candidates, cubic_out);
  auto* sector = cubic->add_subcommand("sector", "Primes a^2 + c^2 in thin sectors");
  sector->add_option("--amax", a_max)->required();
  sector->add_option("--theta", theta_text);
  sector->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  add_output_options(sector, cubic_out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0; anything else is a usage error.
    if (app.exit(e, out, err) == 0) return kOk;
    return kUsageError;
  }

  try {
    if (check->parsed()) {
      out << (is_maximal(TracePair(q, a1), n) ? "true" : "false") << '\n';
    } else if (classify_cmd->parsed()) {
      const TracePair pair(q, a1);
      const Classification c = classify(pair);
      if (c.supersingular()) {
        const DegreeProgression prog = supersingular_degrees(pair);
        out << to_string(c) << ", maximal degrees: ";
        std::string desc;
        if (!prog.empty) {
          desc = "n = " + std::to_string(prog.offset) + " mod " + std::to_string(prog.modulus);
        }
        for (std::uint64_t n : prog.sporadic) {
          desc += (desc.empty() ? "n = " : ", and n = ") + std::to_string(n);
        }
        out << (desc.empty() ? "none" : desc) << '\n';
      } else {
        out << to_string(c) << ", maximal degrees (n > 1): "
            << describe_degrees(ordinary_degrees(pair)) << '\n';
      }
    } else if (bound->parsed()) {
      Sink sink(bound_out, out);
      const DegreeBound b = max_degree(q);
      TableWriter w(sink.stream(), sink.format(), {"q", "n_max", "bracket_lo", "bracket_hi"});
      w.row({b.q, b.n_max, format_double(b.bracket.first), format_double(b.bracket.second)});
    } else if (conv->parsed()) {
      Sink sink(conv_out, out);
      const TracePair pair(q, a1);
      const std::uint64_t cap = limit ? limit : cached_max_degree(q).n_max;
      const mpq_class eps = required_eps(q, std::max<std::uint64_t>(cap, 3));
      const AngleApprox angle = frobenius_angle(pair, eps);
      TableWriter w(sink.stream(), sink.format(), {"index", "m", "n", "m_odd", "n_odd"});
      std::uint64_t index = 0;
      for (const Convergent& c : convergents(angle.x, cap)) {
        w.row({index++, c.m, c.n, (c.m & 1) != 0, (c.n & 1) != 0});
      }
    } else if (search->parsed()) {
      try {
        cfg.validate();
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
      }
      Sink sink(search_out, out);
      TableWriter w(sink.stream(), sink.format(), record_columns());
      enumerate_triples(cfg, [&w](const MaximalTriple& t) { w.record(OutputRecord::from(t)); });
    } else if (soomro->parsed()) {
      Sink sink(cubic_out, out);
      TableWriter w(sink.stream(), sink.format(), record_columns());
      for (const MaximalTriple& t : soomro_family(a_max, jobs)) w.record(OutputRecord::from(t));
    } else if (candidates->parsed()) {
      Sink sink(cubic_out, out);
      TableWriter w(sink.stream(), sink.format(), {"q", "a1"});
      for (std::int64_t c : cubic_candidates(q)) w.row({q, c});
    } else if (sector->parsed()) {
      if (a_max < 1) throw std::invalid_argument("--amax must be >= 1");
      const mpq_class theta = parse_rational(theta_text);
      Sink sink(cubic_out, out);
      TableWriter w(sink.stream(), sink.format(), {"p", "a", "c", "s3", "s4", "s5", "s6"});
      for (const SectorPrime& sp :
           sector_enumerate(static_cast<std::uint64_t>(a_max), theta, jobs)) {
        w.row({sp.p, sp.a, sp.c, sp.s3, sp.s4, sp.s5, sp.s6});
      }
    }
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kOk;
}

}  // namespace maxcurves::cli
