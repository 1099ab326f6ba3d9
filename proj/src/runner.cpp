#include "koenigs/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "koenigs/parser.hpp"

namespace koenigs {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void check(EntryCheckResult& out, const std::string& name, bool pass, const std::string& detail) {
  out.items.push_back({name, pass, detail});
  if (!pass) out.passed = false;
}

int worker_count() {
  if (const char* env = std::getenv("KOENIGS_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

EntryCheckResult run_entry_checks(const CorpusEntry& entry, const CheckConfig& cfg) {
  EntryCheckResult out;
  out.name = entry.name;
  if (!entry.expected) return out;
  const CorpusExpected& exp = *entry.expected;

  try {
    if (exp.dw || exp.type || exp.multiplier) {
      DWReport dw = classify(entry.expr, cfg.linearize.dynamics);
      if (exp.type)
        check(out, "type", *exp.type == to_string(dw.type_label),
              std::string("got ") + to_string(dw.type_label) + ", want " + *exp.type);
      if (exp.dw) {
        double err = std::abs(dw.location - *exp.dw);
        check(out, "dw", err <= cfg.dw_tol, "location error " + fmt(err));
      }
      if (exp.multiplier) {
        double err = std::abs(dw.multiplier - *exp.multiplier);
        check(out, "multiplier", err <= cfg.multiplier_tol, "error " + fmt(err));
      }
    }

    if (exp.step) {
      auto seeds = default_seeds();
      StepAnalysis st = analyze_step(entry.expr, seeds, cfg.linearize.dynamics.n_max,
                                     cfg.linearize.dynamics);
      check(out, "step",
            st.seeds_agree && std::string(to_string(st.decision)) == *exp.step,
            std::string("got ") + to_string(st.decision) + (st.seeds_agree ? "" : " (seeds disagree)") +
                ", want " + *exp.step);
    }

    if (exp.koenigs_closed_form.valid()) {
      KoenigsApprox b = koenigs_bp(entry.expr, cfg.koenigs_oracle_depth, cfg.linearize);
      Complex k0 = eval(exp.koenigs_closed_form, Complex(0, 0));
      double mx = 0;
      for (const Complex& z : disc_grid(cfg.oracle_grid))
        mx = std::max(mx, std::abs(b(z) - (eval(exp.koenigs_closed_form, z) - k0)));
      check(out, "koenigs_closed_form", mx <= cfg.koenigs_oracle_tol,
            "max deviation " + fmt(mx) + " at depth " + std::to_string(cfg.koenigs_oracle_depth));
    }

    for (std::size_t i = 0; i < exp.slc_partners.size(); ++i) {
      const SlcPartner& p = exp.slc_partners[i];
      SLCResult r = slc_estimate(entry.expr, p.expr, SlcMethod::All, cfg.linearize);
      std::string tag = "slc_partner[" + std::to_string(i) + "]";
      if (r.identity_flag) {
        check(out, tag, std::abs(p.c) == 0.0, "partner is the identity");
        continue;
      }
      double k_err = r.koenigs.converged ? std::abs(r.koenigs.value - p.c) : 1e300;
      double a_err = r.angular.converged ? std::abs(r.angular.value - p.c) : 1e300;
      check(out, tag + ".koenigs", k_err <= cfg.slc_koenigs_tol, "error " + fmt(k_err));
      check(out, tag + ".angular", a_err <= cfg.slc_angular_tol, "error " + fmt(a_err));
    }
  } catch (const Error& e) {
    out.passed = false;
    out.error = e.what();
    out.error_code = e.code();
  }
  return out;
}

CorpusRunResult run_corpus_checks(const std::vector<CorpusEntry>& entries,
                                  const CheckConfig& cfg) {
  CorpusRunResult result;
  result.entries.resize(entries.size());
  int workers = std::min<int>(worker_count(), std::max<std::size_t>(entries.size(), 1));
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= entries.size()) return;
      result.entries[i] = run_entry_checks(entries[i], cfg);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : result.entries)
    if (!e.passed) result.all_passed = false;
  return result;
}

}  // namespace koenigs
