#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mtm/numeric.hpp"
#include "mtm/rng.hpp"
#include "mtm/trace.hpp"

namespace mtm {

// Trace selecting rule: one probability per trace, read as psi_u(T) where
// u = T_start. Defined exactly on Out(u) for every start point u.
template <class S>
class SelectionRule {
  public:
    SelectionRule() = default;
    SelectionRule(const TraceSet& ts, std::vector<S> prob) : prob_(std::move(prob)) {
        validate(ts);
    }

    const S& prob(TraceId t) const { return prob_[t]; }
    const std::vector<S>& probs() const { return prob_; }

    bool uniformly_selective(const TraceSet& ts) const {
        for (PointId u : ts.start_points()) {
            const auto& out = ts.out(u);
            for (std::size_t i = 1; i < out.size(); ++i)
                if (!(prob_[out[i]] == prob_[out[0]])) return false;
        }
        return true;
    }

  private:
    void validate(const TraceSet& ts) const {
        if (prob_.size() != static_cast<std::size_t>(ts.trace_count()))
            fail(Errc::invalid_argument, "rule size does not match trace set");
        for (const S& p : prob_)
            if (p < S(0)) fail(Errc::invalid_argument, "negative selection probability");
        for (PointId u : ts.start_points()) {
            S sum(0);
            for (TraceId t : ts.out(u)) sum += prob_[t];
            if constexpr (num::traits<S>::exact) {
                if (!(sum == S(1)))
                    fail(Errc::invalid_argument,
                         "psi does not sum to 1 at point " + std::to_string(u));
            } else {
                if (num::abs_val(sum - S(1)) > 1e-9)
                    fail(Errc::invalid_argument,
                         "psi does not sum to 1 at point " + std::to_string(u));
            }
        }
    }

    std::vector<S> prob_;
};

template <class S>
struct MTModel {
    std::shared_ptr<const TraceSet> traces;
    SelectionRule<S> rule;

    const TraceSet& ts() const { return *traces; }
    StateId state_count() const { return traces->state_count(); }
};

template <class S>
MTModel<S> make_model(TraceSet ts, std::vector<S> prob) {
    auto shared = std::make_shared<const TraceSet>(std::move(ts));
    SelectionRule<S> rule(*shared, std::move(prob));
    return MTModel<S>{std::move(shared), std::move(rule)};
}

// psi_u(T) = 1/|Out(u)| for every u and T in Out(u).
template <class S>
MTModel<S> uniform_rule(TraceSet ts) {
    std::vector<S> prob(ts.trace_count());
    for (PointId u : ts.start_points()) {
        const auto& out = ts.out(u);
        S p = num::traits<S>::from_ratio(1, static_cast<std::int64_t>(out.size()));
        for (TraceId t : out) prob[t] = p;
    }
    return make_model(std::move(ts), std::move(prob));
}

// Builds the two-point-trace model whose kernel is exactly the given
// stochastic matrix: traces {(u,v) | p_uv > 0} with psi_u(u,v) = p_uv.
template <class S>
MTModel<S> mtm_from_chain(const std::vector<std::vector<S>>& transition) {
    const std::size_t n = transition.size();
    if (n == 0) fail(Errc::invalid_stochastic_matrix, "empty matrix");
    std::vector<Trace> traces;
    std::vector<S> prob;
    for (std::size_t u = 0; u < n; ++u) {
        if (transition[u].size() != n)
            fail(Errc::invalid_stochastic_matrix, "matrix is not square");
        S row_sum(0);
        bool any = false;
        for (std::size_t v = 0; v < n; ++v) {
            const S& p = transition[u][v];
            if (p < S(0)) fail(Errc::invalid_stochastic_matrix, "negative entry");
            row_sum += p;
            if (!num::is_zero(p)) {
                traces.push_back(Trace{{static_cast<PointId>(u), static_cast<PointId>(v)}});
                prob.push_back(p);
                any = true;
            }
        }
        bool row_ok;
        if constexpr (num::traits<S>::exact)
            row_ok = row_sum == S(1);
        else
            row_ok = num::abs_val(row_sum - S(1)) <= 1e-12;
        if (!row_ok || !any)
            fail(Errc::invalid_stochastic_matrix, "row " + std::to_string(u) + " does not sum to 1");
    }
    std::vector<Point> points(n);
    for (std::size_t i = 0; i < n; ++i) points[i].id = static_cast<PointId>(i);
    return make_model(TraceSet::build(std::move(points), std::move(traces)), std::move(prob));
}

// Out-transitions of one chain state: deterministic move inside the trace,
// or the next-trace rule at the end point.
template <class S>
std::vector<std::pair<ChainState, S>> transitions(const MTModel<S>& m, const ChainState& s) {
    const TraceSet& ts = m.ts();
    const Trace& tr = ts.trace(s.trace);
    std::vector<std::pair<ChainState, S>> result;
    if (s.index + 1 < static_cast<std::int32_t>(tr.size())) {
        result.emplace_back(ChainState{s.trace, s.index + 1}, S(1));
        return result;
    }
    for (TraceId t : ts.out(tr.end())) {
        const S& p = m.rule.prob(t);
        if (!num::is_zero(p)) result.emplace_back(ChainState{t, 1}, p);
    }
    return result;
}

// One step of the chain. Deterministic within a trace; samples the next
// trace from psi at the end point.
template <class URBG>
ChainState step(const MTModel<double>& m, const ChainState& s, URBG& rng) {
    const TraceSet& ts = m.ts();
    const Trace& tr = ts.trace(s.trace);
    if (s.index + 1 < static_cast<std::int32_t>(tr.size())) return {s.trace, s.index + 1};
    const auto& out = ts.out(tr.end());
    double x = (static_cast<double>(rng() - URBG::min()) /
                (static_cast<double>(URBG::max() - URBG::min()) + 1.0));
    double acc = 0;
    for (TraceId t : out) {
        acc += m.rule.prob(t);
        if (x < acc) return {t, 1};
    }
    return {out.back(), 1};
}

template <class S>
MTModel<double> to_float(const MTModel<S>& m) {
    std::vector<double> prob(m.ts().trace_count());
    for (TraceId t = 0; t < m.ts().trace_count(); ++t)
        prob[t] = num::traits<S>::to_double(m.rule.prob(t));
    return MTModel<double>{m.traces, SelectionRule<double>(m.ts(), std::move(prob))};
}

}  // namespace mtm
