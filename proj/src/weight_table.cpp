#include "shearmhd/weight_table.hpp"

#include <cmath>
#include <thread>

#include "shearmhd/errors.hpp"

namespace shearmhd::weights {

WeightTable::WeightTable(const Grid& g, const WeightParams& p, double t, int threads)
    : grid_(g), params_(p), t_(t) {
  if (t < 0.0) throw ContractError("WeightTable: negative time");
  fill(nullptr, threads);
}

WeightTable::WeightTable(const WeightTable& previous, double t_new, int threads)
    : grid_(previous.grid_), params_(previous.params_), t_(t_new) {
  if (t_new < previous.t_) throw ContractError("WeightTable: cannot advance backwards in time");
  fill(&previous, threads);
}

void WeightTable::fill(const WeightTable* previous, int threads) {
  const size_t n = static_cast<size_t>(grid_.size());
  for (auto* v : {&log_mL, &log_m, &log_q, &log_J, &log_Jt, &log_A, &log_At, &dmL_ratio,
                  &dm_ratio, &dq_ratio, &Jt_over_J})
    v->assign(n, 0.0);
  lambda_ = lambda_at(t_, params_);
  lambda_rate_ = weights::lambda_rate(t_, params_);

  auto work = [&](int row_begin, int row_end) {
    for (int ix = row_begin; ix < row_end; ++ix) {
      const int k = grid_.k_of(ix);
      for (int iy = 0; iy < grid_.n_y; ++iy) {
        const int i = grid_.index(ix, iy);
        // The Nyquist row and column have no partner on the grid; their
        // conj_index wraps onto a different wavenumber, so compute them directly.
        const bool nyquist = 2 * k == -grid_.n_x || 2 * grid_.m_of(iy) == -grid_.n_y;
        const int j = nyquist ? i : grid_.conj_index(ix, iy);
        if (j < i) continue;  // mirrored below
        const double eta = grid_.eta_of(iy);
        const auto& P = params_;
        double lm = previous ? previous->log_m[i] + log_m_increment(previous->t_, t_, k, eta, P)
                             : weights::log_m(t_, k, eta, P);
        const double lq = weights::log_q(t_, k, eta, P);
        const double ljt = 8.0 * P.rho * std::cbrt(std::abs(eta)) - lq;
        const double lj = log_add_exp(ljt, 8.0 * P.rho * std::cbrt(std::abs(k)));
        const double base = P.N * std::log(bracket(k, eta)) - lm + lambda_ * gevrey_weight(k, eta, P.s);
        const double vals[] = {weights::log_mL(t_, k, eta, P), lm, lq, lj, ljt, base + lj,
                               base + ljt, dlog_mL(t_, k, eta), dlog_m(t_, k, eta, P),
                               weights::dq_ratio(t_, k, eta, P), std::exp(ljt - lj)};
        std::vector<double>* dst[] = {&log_mL, &log_m, &log_q, &log_J, &log_Jt, &log_A,
                                      &log_At, &dmL_ratio, &dm_ratio, &dq_ratio, &Jt_over_J};
        for (int q = 0; q < 11; ++q) {
          (*dst[q])[i] = vals[q];
          (*dst[q])[j] = vals[q];
        }
      }
    }
  };

  threads = std::max(1, threads);
  if (threads == 1) {
    work(0, grid_.n_x);
  } else {
    // Row blocks write disjoint mirror pairs only when a row and its mirror
    // land in the same block, so rows are paired up: ix and n_x − ix.
    std::vector<std::thread> pool;
    std::vector<int> rows;
    for (int ix = 0; ix <= grid_.n_x / 2; ++ix) rows.push_back(ix);
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (size_t r = w; r < rows.size(); r += threads) {
          const int ix = rows[r];
          work(ix, ix + 1);
          const int mirror = (grid_.n_x - ix) % grid_.n_x;
          if (mirror != ix) work(mirror, mirror + 1);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
}

}  // namespace shearmhd::weights
