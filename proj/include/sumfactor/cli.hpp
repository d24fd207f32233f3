#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sumfactor/abgroup.hpp"
#include "sumfactor/barden.hpp"
#include "sumfactor/cones.hpp"
#include "sumfactor/grouppres.hpp"
#include "sumfactor/mfdexpr.hpp"
#include "sumfactor/monoid_specs.hpp"
#include "sumfactor/monoidkit.hpp"
#include "sumfactor/wallhc.hpp"

namespace sumfactor::cli {

enum ExitCode { kOk = 0, kDomainError = 1, kUsageError = 2 };

namespace detail {

/// SUMFACTOR_MAX_LEVEL, when set, caps every enumeration bound.
inline std::size_t cap_level(std::size_t requested) {
  const char* env = std::getenv("SUMFACTOR_MAX_LEVEL");
  if (!env || !*env) return requested;
  std::size_t cap = parse_integer(env).convert_to<std::size_t>();
  return std::min(requested, cap);
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string join(const std::vector<barden::Manifold5>& ms) {
  if (ms.empty()) return "S^5";
  std::string out;
  for (std::size_t i = 0; i < ms.size(); ++i) out += (i ? " # " : "") + barden::to_string(ms[i]);
  return out;
}

inline std::string display_ln(const Integer& torsion) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6Lf", ln(torsion));
  return buf;
}

template <monoid::MonoidSpec M>
void monoid_check(const M& spec, const std::string& op, const std::vector<std::string>& elements, std::size_t bound,
                  std::ostream& out) {
  auto element = [&](std::size_t i) {
    if (i >= elements.size()) throw InvalidArgument("--op " + op + " needs " + std::to_string(i + 1) + " element(s)");
    return spec.parse(elements[i]);
  };
  monoid::VerdictOf<M> v;
  if (op == "unit") v = monoid::is_unit(spec, element(0), bound);
  else if (op == "associated") v = monoid::are_associated(spec, element(0), element(1), bound);
  else if (op == "divides") v = monoid::divides(spec, element(0), element(1), bound);
  else if (op == "irreducible") v = monoid::is_irreducible(spec, element(0), bound);
  else if (op == "prime") v = monoid::is_prime(spec, element(0), bound);
  else if (op == "cancellable") v = monoid::is_cancellable(spec, element(0), bound);
  else if (op == "ufm") v = monoid::ufm_check(spec, bound);
  else throw InvalidArgument("unknown op '" + op + "'");
  out << monoid::format_verdict(spec, v) << "\n";
}

inline void hc_case(unsigned k, std::ostream& out) {
  auto c = wallhc::ufm_case(k);
  out << "k=" << k << " (k mod 8 = " << k % 8 << ")\n";
  out << "diff=" << wallhc::to_string(c.diff.status) << " obstruction=" << wallhc::to_string(c.diff.obstruction)
      << " reason=" << c.diff.reason << "\n";
  out << "pl=" << wallhc::to_string(c.pl.status) << " obstruction=" << wallhc::to_string(c.pl.obstruction)
      << " reason=" << c.pl.reason << "\n";
  out << "diff_cancellation=" << yes_no(c.diff_cancellation) << "\n";
}

}  // namespace detail

/// Runs one command line (without the program name). Output goes to out,
/// diagnostics to err; returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computation in connected-sum monoids of manifolds", "sumfactor"};
  app.require_subcommand(1);
  bool show_ln = false;
  app.add_flag("--display-ln", show_ln, "also print ln of torsion orders (display only)");

  // snf
  auto* snf_cmd = app.add_subcommand("snf", "Smith normal form of an integer matrix, e.g. [[2,4],[6,8]]");
  std::string matrix_text;
  snf_cmd->add_option("matrix", matrix_text)->required();

  // group
  auto* group_cmd = app.add_subcommand("group", "canonical form of the direct sum of group literals");
  std::vector<std::string> group_texts;
  group_cmd->add_option("groups", group_texts)->required();

  // m5
  auto* m5 = app.add_subcommand("m5", "simply connected 5-manifolds");
  m5->require_subcommand(1);
  std::vector<std::string> m5_args;
  std::size_t max_rank = 1, max_torsion = 4;
  std::string max_height_text = "1";
  bool with_inf = false;
  auto* m5_sum = m5->add_subcommand("sum", "connected sum");
  m5_sum->add_option("manifolds", m5_args)->required();
  auto* m5_factor = m5->add_subcommand("factor", "factorization into irreducibles");
  m5_factor->add_option("manifold", m5_args)->required()->expected(1);
  auto* m5_divides = m5->add_subcommand("divides", "complement of N in M");
  m5_divides->add_option("pair", m5_args)->required()->expected(2);
  auto* m5_wu = m5->add_subcommand("wu", "divisibility by the Wu manifold");
  m5_wu->add_option("manifold", m5_args)->required()->expected(1);
  auto* m5_enum = m5->add_subcommand("enumerate", "all manifolds within bounds");
  auto* m5_prime = m5->add_subcommand("prime-sweep", "bounded primality of every candidate");
  auto* m5_ufm = m5->add_subcommand("ufm-sweep", "bounded unique-factorization sweep");
  for (auto* sub : {m5_enum, m5_prime, m5_ufm}) {
    sub->add_option("--max-rank", max_rank);
    sub->add_option("--max-torsion", max_torsion);
    sub->add_option("--max-height", max_height_text);
    sub->add_flag("--with-inf", with_inf, "include height inf");
  }

  // monoid
  auto* monoid_cmd = app.add_subcommand("monoid", "bounded predicates in built-in monoids");
  monoid_cmd->require_subcommand(1);
  auto* monoid_check = monoid_cmd->add_subcommand("check", "decide one predicate");
  std::string spec_name, op;
  std::vector<std::string> elements;
  std::size_t bound = 10;
  monoid_check->add_option("--spec", spec_name,
                           "nat-add, nat-mul, sign-quotient, hc0..hc7, barden, witness-metzler, witness-q28, "
                           "witness-cone")
      ->required();
  monoid_check->add_option("--op", op, "unit, associated, divides, irreducible, prime, cancellable, ufm")->required();
  monoid_check->add_option("--element", elements, "element literal (repeat for two-argument ops)");
  monoid_check->add_option("--bound", bound);

  // hc
  auto* hc = app.add_subcommand("hc", "highly connected 2k-manifolds");
  hc->require_subcommand(1);
  unsigned hc_k = 1, hc_r = 1, hc_arf = 0;
  std::size_t hc_g = 1;
  auto* hc_case = hc->add_subcommand("case", "unique-factorization case for k");
  hc_case->add_option("--k", hc_k)->required();
  auto* hc_witness = hc->add_subcommand("witness", "type-bit non-cancellation witness");
  hc_witness->add_option("--k-mod-8", hc_r)->required();
  hc_witness->add_option("--g", hc_g)->required();
  hc_witness->add_option("--arf", hc_arf);

  // pres
  auto* pres_cmd = app.add_subcommand("pres", "group presentations");
  pres_cmd->require_subcommand(1);
  std::string pres_text;
  auto* pres_parse = pres_cmd->add_subcommand("parse", "canonical form");
  auto* pres_ab = pres_cmd->add_subcommand("abelianize", "abelianization");
  auto* pres_def = pres_cmd->add_subcommand("deficiency", "deficiency and Euler characteristic");
  for (auto* sub : {pres_parse, pres_ab, pres_def}) sub->add_option("presentation", pres_text)->required();
  auto* pres_metzler = pres_cmd->add_subcommand("metzler", "presentation of (Z/p)^s with twist q");
  std::string mp = "5", mq = "1";
  std::optional<std::string> mq2;
  std::size_t ms = 3;
  pres_metzler->add_option("--p", mp);
  pres_metzler->add_option("--s", ms);
  pres_metzler->add_option("--q", mq);
  pres_metzler->add_option("--q2", mq2, "compare with a second twist");
  auto* pres_q28 = pres_cmd->add_subcommand("q28", "the two Q28 presentations");

  // cones
  auto* cones_cmd = app.add_subcommand("cones", "mapping cones of torsion in pi_7(S^4)");
  cones_cmd->require_subcommand(1);
  long long ca = 1, cb = 5;
  auto* cones_equiv = cones_cmd->add_subcommand("equiv", "homotopy and stable equivalence");
  cones_equiv->add_option("--a", ca)->required();
  cones_equiv->add_option("--b", cb)->required();
  auto* cones_wit = cones_cmd->add_subcommand("witnesses", "stably but not homotopy equivalent pairs");

  // witness
  auto* witness_cmd = app.add_subcommand("witness", "non-cancellation certificate");
  std::string family = "metzler", wp = "5", wq = "1", wq2 = "2", replay_path;
  std::size_t ws = 3;
  long long wa = 1, wb = 5;
  unsigned wk = 5;
  witness_cmd->add_option("--family", family);
  witness_cmd->add_option("--p", wp);
  witness_cmd->add_option("--s", ws);
  witness_cmd->add_option("--q", wq);
  witness_cmd->add_option("--q2", wq2);
  witness_cmd->add_option("--a", wa);
  witness_cmd->add_option("--b", wb);
  witness_cmd->add_option("--k", wk);
  witness_cmd->add_option("--replay", replay_path, "replay a certificate file ('-' for stdin)");

  // complexity
  auto* complexity_cmd = app.add_subcommand("complexity", "complexity of a manifold descriptor");
  std::string descriptor_text;
  complexity_cmd->add_option("--descriptor", descriptor_text)->required();

  std::vector<std::string> argv_store{"sumfactor"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*snf_cmd) {
      auto form = snf(parse_matrix(matrix_text));
      out << "diag=(";
      for (std::size_t i = 0; i < form.diagonal.size(); ++i) out << (i ? "," : "") << form.diagonal[i];
      out << ")\nleft=" << to_string(form.left) << "\nright=" << to_string(form.right) << "\n";
    } else if (*group_cmd) {
      AbelianGroup g;
      for (const auto& t : group_texts) g = direct_sum(g, parse_group(t));
      out << to_string(g) << "\n";
      if (show_ln) out << "t=" << detail::display_ln(g.torsion_order()) << "\n";
    } else if (*m5) {
      barden::Height max_height = barden::parse_height(max_height_text);
      auto bounded_range = [&] {
        return barden::enumerate5(detail::cap_level(max_rank), detail::cap_level(max_torsion), max_height, with_inf);
      };
      if (*m5_sum) {
        std::vector<barden::Manifold5> parts;
        for (const auto& t : m5_args) parts.push_back(barden::parse_manifold(t));
        out << barden::to_string(barden::fold_consum(parts)) << "\n";
      } else if (*m5_factor) {
        auto m = barden::parse_manifold(m5_args.at(0));
        out << "factors=" << detail::join(barden::factorize5(m)) << "\n";
        out << "irreducible=" << detail::yes_no(barden::irreducible5(m)) << "\n";
      } else if (*m5_divides) {
        auto n = barden::parse_manifold(m5_args.at(0)), m = barden::parse_manifold(m5_args.at(1));
        auto c = barden::divides5(n, m);
        out << "divides=" << detail::yes_no(c.has_value()) << "\n";
        out << "complement=" << (c ? barden::to_string(*c) : std::string("none")) << "\n";
      } else if (*m5_wu) {
        auto m = barden::parse_manifold(m5_args.at(0));
        bool d = barden::wu_divides(m);
        out << "divides=" << detail::yes_no(d) << "\n";
        out << "complement=" << (d ? barden::to_string(barden::wu_complement(m)) : std::string("none")) << "\n";
      } else if (*m5_enum) {
        auto range = bounded_range();
        for (const auto& m : range) out << barden::to_string(m) << "\n";
        out << "count=" << range.size() << "\n";
      } else if (*m5_prime) {
        auto start = std::chrono::steady_clock::now();
        auto range = bounded_range();
        auto sweep = barden::prime_sweep(range);
        for (const auto& e : sweep) {
          out << barden::to_string(e.candidate) << " prime=" << (e.prime_at_bound ? "yes-at-bound" : "no");
          if (e.witness)
            out << " witness=(" << barden::to_string(e.witness->first) << "," << barden::to_string(e.witness->second)
                << ")";
          out << "\n";
        }
        auto ms_elapsed =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        out << "candidates=" << sweep.size() << " range=" << range.size() << " runtime_ms=" << ms_elapsed << "\n";
      } else if (*m5_ufm) {
        auto range = bounded_range();
        auto result = barden::ufm_sweep(range);
        out << "answer=" << (result.unique ? "yes" : "no") << " elements=" << result.elements
            << " counterexamples=" << result.counterexamples;
        if (result.first_counterexample) {
          out << " witness=" << barden::to_string(*result.first_counterexample);
          for (const auto& f : result.first_factorizations) out << " = " << detail::join(f);
        }
        out << " scope=bounded\n";
      }
    } else if (*monoid_cmd) {
      std::size_t level = detail::cap_level(bound);
      if (spec_name == "nat-add") detail::monoid_check(monoid::NaturalsAdditive{}, op, elements, level, out);
      else if (spec_name == "nat-mul") detail::monoid_check(monoid::NaturalsMultiplicative{}, op, elements, level, out);
      else if (spec_name == "sign-quotient") detail::monoid_check(monoid::SignQuotient{}, op, elements, level, out);
      else if (spec_name == "barden") detail::monoid_check(monoid::BardenMonoid{}, op, elements, level, out);
      else if (spec_name.size() == 3 && spec_name.rfind("hc", 0) == 0 && spec_name[2] >= '0' && spec_name[2] <= '7')
        detail::monoid_check(monoid::HcMonoid(spec_name[2] - '0'), op, elements, level, out);
      else if (spec_name == "witness-metzler" || spec_name == "witness-q28" || spec_name == "witness-cone")
        detail::monoid_check(monoid::WitnessMonoid(spec_name.substr(8)), op, elements, level, out);
      else {
        err << "usage error: --spec: unknown monoid '" << spec_name << "'\n";
        return kUsageError;
      }
    } else if (*hc) {
      if (*hc_case) {
        detail::hc_case(hc_k, out);
      } else {
        if (hc_r != 1) throw ParameterViolation("the type witness exists for k = 1 mod 8 only");
        auto w = wallhc::type_noncancellation_witness(hc_g, hc_arf);
        out << "W0=" << wallhc::to_string(w.w0) << "\nW1=" << wallhc::to_string(w.w1)
            << "\nW0#W1=" << wallhc::to_string(w.mixed) << "\nW0#W0=" << wallhc::to_string(w.doubled)
            << "\nholds=" << detail::yes_no(w.holds()) << "\nequality=modeled invariants (rank, arf, type)\n";
      }
    } else if (*pres_cmd) {
      if (*pres_parse) {
        out << pres::to_string(pres::parse_presentation(pres_text)) << "\n";
      } else if (*pres_ab) {
        auto g = pres::abelianization(pres::parse_presentation(pres_text));
        out << to_string(g) << "\n";
        if (show_ln && g.is_finite()) out << "t=" << detail::display_ln(g.torsion_order()) << "\n";
      } else if (*pres_def) {
        auto p = pres::parse_presentation(pres_text);
        out << "deficiency=" << pres::deficiency(p) << "\neuler_char=" << pres::euler_char(p) << "\n";
      } else if (*pres_metzler) {
        auto p = pres::metzler_presentation(parse_integer(mp), ms, parse_integer(mq));
        out << pres::to_string(p) << "\n";
        out << "deficiency=" << pres::deficiency(p) << "\nabelianization=" << to_string(pres::abelianization(p))
            << "\n";
        if (mq2) {
          pres::metzler_presentation(parse_integer(mp), ms, parse_integer(*mq2));
          auto rec = pres::metzler_distinct(parse_integer(mp), parse_integer(mq), parse_integer(*mq2));
          Certificate c;
          pres::write_qr(c, rec);
          for (const auto& [k, v] : c.fields) out << k << "=" << v << "\n";
          out << "distinct=" << detail::yes_no(rec.distinct()) << "\n";
        }
      } else if (*pres_q28) {
        out << serialize(pres::q28_presentations().certificate);
      }
    } else if (*cones_cmd) {
      if (*cones_equiv) {
        cones::ConeClass a(ca), b(cb);
        out << "homotopy=" << detail::yes_no(cones::cone_homotopy_equiv(a, b))
            << "\nstable=" << detail::yes_no(cones::cone_stable_equiv(a, b)) << "\n";
      } else if (*cones_wit) {
        for (const auto& p : cones::cone_witness_pairs()) out << cones::to_string(p) << "\n";
      }
    } else if (*witness_cmd) {
      if (!replay_path.empty()) {
        std::string text;
        if (replay_path == "-") {
          text.assign(std::istreambuf_iterator<char>(std::cin), {});
        } else {
          std::ifstream in(replay_path);
          if (!in) {
            err << "usage error: --replay: cannot read '" << replay_path << "'\n";
            return kUsageError;
          }
          text.assign(std::istreambuf_iterator<char>(in), {});
        }
        auto result = mfd::replay_witness(parse_certificate(text));
        out << "replay=" << (result.ok() ? "ok" : "failed") << "\ninequivalent=" << detail::yes_no(result.inequivalent)
            << "\nnormal_forms_equal=" << detail::yes_no(result.stabilized_equal)
            << "\nfields_match=" << detail::yes_no(result.fields_match) << "\n";
        if (!result.ok()) {
          err << "error: Refusal: " << result.message << "\n";
          return kDomainError;
        }
      } else {
        mfd::WitnessParams params;
        params.p = parse_integer(wp);
        params.s = ws;
        params.q = parse_integer(wq);
        params.q2 = parse_integer(wq2);
        params.a = wa;
        params.b = wb;
        out << serialize(mfd::make_witness(mfd::parse_family(family), params, wk).certificate);
      }
    } else if (*complexity_cmd) {
      auto m = mfd::parse_descriptor(descriptor_text);
      out << "descriptor=" << mfd::to_string(m) << "\ndim=" << m.dim() << "\npi1=" << mfd::to_string(m.pi1())
          << "\nc=" << mfd::to_string(mfd::complexity(m), show_ln) << "\n";
    }
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return kDomainError;
  }
  return kOk;
}

}  // namespace sumfactor::cli
