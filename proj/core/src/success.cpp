#include "d1lc/success.hpp"

#include "d1lc/error.hpp"
#include "d1lc/params.hpp"

#include <string>
#include <unordered_map>

namespace d1lc {

std::string_view subroutine_name(Subroutine s) noexcept {
  switch (s) {
    case Subroutine::TryRandomColor: return "try_random_color";
    case Subroutine::GenerateSlack: return "generate_slack";
    case Subroutine::PutAside: return "put_aside";
    case Subroutine::SynchColorTrial: return "synch_color_trial";
    case Subroutine::MultiTrialFirstLoop: return "multi_trial_first_loop";
    case Subroutine::MultiTrialSecondLoop: return "multi_trial_second_loop";
    case Subroutine::MultiTrialFinal: return "multi_trial_final";
  }
  return "unknown";
}

std::vector<Subroutine> all_subroutines() {
  return {Subroutine::TryRandomColor,      Subroutine::GenerateSlack,        Subroutine::PutAside,
          Subroutine::SynchColorTrial,     Subroutine::MultiTrialFirstLoop, Subroutine::MultiTrialSecondLoop,
          Subroutine::MultiTrialFinal};
}

Subroutine parse_subroutine(std::string_view name) {
  for (Subroutine s : all_subroutines()) {
    if (subroutine_name(s) == name) return s;
  }
  throw Error(Errc::UnknownSubroutine, "no subroutine named '" + std::string(name) + "'");
}

std::size_t defer_failures(const Phase& phase, const std::vector<char>& ok, ColoringState& st,
                           std::vector<char>& marked) {
  std::size_t deferred = 0;
  for (std::size_t i = 0; i < phase.subjects.size(); ++i) {
    NodeId v = phase.subjects[i];
    if (ok[i] || st.colored(v)) continue;
    if (!st.deferred(v)) ++deferred;
    st.defer(v);
    if (!marked.empty()) marked[v] = 0;
  }
  return deferred;
}

namespace {

// d * base^q <= s with q = a/b, i.e. d^b * base^a <= s^b.
bool scaled_le(std::uint64_t d, std::uint64_t base, const Rational& q, std::int64_t s) {
  if (d == 0) return true;
  if (s <= 0) return false;
  const unsigned long a = q.get_num().get_ui();
  const unsigned long b = q.get_den().get_ui();
  // base^a grows past any 64-bit slack quickly; cut off huge exponents early.
  if (base >= 2 && a > 64 * b) return false;
  mpz_class lhs, pa, rhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), d, b);
  mpz_ui_pow_ui(pa.get_mpz_t(), base, a);
  lhs *= pa;
  mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(s), b);
  return lhs <= rhs;
}

class Base : public SuccessEvaluator {
 public:
  Base(Subroutine kind, std::uint64_t threshold) : kind_(kind), threshold_(threshold) {}
  Subroutine kind() const noexcept override { return kind_; }

  std::vector<char> evaluate(const D1LCInstance& inst, const ColoringState& st, std::span<const char> marked,
                             std::span<const NodeId> subjects) const override {
    prepare(inst, st, marked);
    std::vector<char> out(subjects.size(), 0);
    for (std::size_t i = 0; i < subjects.size(); ++i) {
      NodeId v = subjects[i];
      if (st.colored(v) || residual_degree(inst, st, v) < threshold_) {
        out[i] = 1;
      } else {
        out[i] = test(inst, st, marked, v) ? 1 : 0;
      }
    }
    return out;
  }

 protected:
  virtual void prepare(const D1LCInstance&, const ColoringState&, std::span<const char>) const {}
  virtual bool test(const D1LCInstance& inst, const ColoringState& st, std::span<const char> marked,
                    NodeId v) const = 0;
  std::uint64_t threshold() const noexcept { return threshold_; }

 private:
  Subroutine kind_;
  std::uint64_t threshold_;
};

class TrcSsp final : public Base {
 public:
  using Base::Base;

 protected:
  bool test(const D1LCInstance& inst, const ColoringState& st, std::span<const char>, NodeId v) const override {
    return compute_slack(inst, st, v) >= 2 * static_cast<std::int64_t>(residual_degree(inst, st, v));
  }
};

class GenerateSlackSsp final : public Base {
 public:
  GenerateSlackSsp(std::uint64_t threshold, Rational gamma)
      : Base(Subroutine::GenerateSlack, threshold), gamma_(std::move(gamma)) {}

 protected:
  bool test(const D1LCInstance& inst, const ColoringState& st, std::span<const char>, NodeId v) const override {
    const auto s = compute_slack(inst, st, v);
    const auto d = residual_degree(inst, st, v);
    return Rational(static_cast<long>(s)) >= gamma_ * mpz_class(static_cast<unsigned long>(d));
  }

 private:
  Rational gamma_;
};

class LoopSsp final : public Base {
 public:
  LoopSsp(Subroutine kind, std::uint64_t threshold, SlackBound bound) : Base(kind, threshold), bound_(bound) {}

 protected:
  bool test(const D1LCInstance& inst, const ColoringState& st, std::span<const char>, NodeId v) const override {
    return slack_bound_holds(bound_, residual_degree(inst, st, v), compute_slack(inst, st, v));
  }

 private:
  SlackBound bound_;
};

class FinalSsp final : public Base {
 public:
  using Base::Base;

 protected:
  bool test(const D1LCInstance&, const ColoringState&, std::span<const char>, NodeId) const override {
    return false;  // only colored or low-degree nodes succeed
  }
};

// Clique-level counts recomputed per evaluation call.
class GroupSsp : public Base {
 public:
  GroupSsp(Subroutine kind, std::uint64_t threshold, std::shared_ptr<const std::vector<std::int64_t>> group)
      : Base(kind, threshold), group_(std::move(group)) {
    if (!group_) throw Error(Errc::BadParameters, "clique-level success property needs clique membership");
  }

 protected:
  std::int64_t group_of(NodeId v) const { return v < group_->size() ? (*group_)[v] : -1; }
  const std::vector<std::int64_t>& groups() const { return *group_; }

 private:
  std::shared_ptr<const std::vector<std::int64_t>> group_;
};

class PutAsideSsp final : public GroupSsp {
 public:
  PutAsideSsp(std::uint64_t threshold, std::shared_ptr<const std::vector<std::int64_t>> group, Rational need)
      : GroupSsp(Subroutine::PutAside, threshold, std::move(group)), need_(std::move(need)) {}

  std::vector<char> evaluate(const D1LCInstance& inst, const ColoringState& st, std::span<const char> marked,
                             std::span<const NodeId> subjects) const override {
    std::unordered_map<std::int64_t, std::uint64_t> counts;
    const auto& g = groups();
    for (NodeId v = 0; v < g.size() && v < st.size(); ++v) {
      if (g[v] < 0) continue;
      const bool in_p = v < marked.size() && marked[v];
      if (in_p || st.deferred(v)) ++counts[g[v]];
    }
    std::vector<char> out(subjects.size(), 0);
    for (std::size_t i = 0; i < subjects.size(); ++i) {
      NodeId v = subjects[i];
      if (st.colored(v) || residual_degree(inst, st, v) < threshold()) {
        out[i] = 1;
        continue;
      }
      auto it = counts.find(group_of(v));
      const std::uint64_t have = it == counts.end() ? 0 : it->second;
      out[i] = Rational(static_cast<unsigned long>(have)) >= need_ ? 1 : 0;
    }
    return out;
  }

 protected:
  bool test(const D1LCInstance&, const ColoringState&, std::span<const char>, NodeId) const override { return false; }

 private:
  Rational need_;
};

class SynchSsp final : public GroupSsp {
 public:
  SynchSsp(std::uint64_t threshold, std::shared_ptr<const std::vector<std::int64_t>> group,
           std::shared_ptr<const std::vector<char>> participants, Rational allowed)
      : GroupSsp(Subroutine::SynchColorTrial, threshold, std::move(group)),
        participants_(std::move(participants)),
        allowed_(std::move(allowed)) {
    if (!participants_) throw Error(Errc::BadParameters, "synchronized trial property needs its participants");
  }

  std::vector<char> evaluate(const D1LCInstance& inst, const ColoringState& st, std::span<const char>,
                             std::span<const NodeId> subjects) const override {
    std::unordered_map<std::int64_t, std::uint64_t> fails;
    const auto& g = groups();
    const auto& part = *participants_;
    for (NodeId v = 0; v < g.size() && v < st.size() && v < part.size(); ++v) {
      if (g[v] >= 0 && part[v] && st.uncolored(v)) ++fails[g[v]];
    }
    std::vector<char> out(subjects.size(), 0);
    for (std::size_t i = 0; i < subjects.size(); ++i) {
      NodeId v = subjects[i];
      if (st.colored(v) || residual_degree(inst, st, v) < threshold()) {
        out[i] = 1;
        continue;
      }
      auto it = fails.find(group_of(v));
      const std::uint64_t have = it == fails.end() ? 0 : it->second;
      out[i] = Rational(static_cast<unsigned long>(have)) <= allowed_ ? 1 : 0;
    }
    return out;
  }

 protected:
  bool test(const D1LCInstance&, const ColoringState&, std::span<const char>, NodeId) const override { return false; }

 private:
  std::shared_ptr<const std::vector<char>> participants_;
  Rational allowed_;
};

}  // namespace

bool slack_bound_holds(const SlackBound& bound, std::uint64_t d, std::int64_t s) {
  return scaled_le(d, bound.base1, bound.q1, s) || scaled_le(d, bound.base2, bound.q2, s);
}

SuccessEvaluators ssp_wsp_for(Subroutine s, const Config& cfg, const SuccessContext& ctx) {
  std::shared_ptr<const SuccessEvaluator> e;
  switch (s) {
    case Subroutine::TryRandomColor: e = std::make_shared<TrcSsp>(s, ctx.threshold); break;
    case Subroutine::GenerateSlack: e = std::make_shared<GenerateSlackSsp>(ctx.threshold, cfg.gamma); break;
    case Subroutine::PutAside: {
      Rational need = cfg.c_p * mpz_class(static_cast<unsigned long>(ctx.ell)) *
                      mpz_class(static_cast<unsigned long>(ctx.ell));
      e = std::make_shared<PutAsideSsp>(ctx.threshold, ctx.group, need);
      break;
    }
    case Subroutine::SynchColorTrial:
      e = std::make_shared<SynchSsp>(ctx.threshold, ctx.group, ctx.participants,
                                     cfg.c_t * mpz_class(static_cast<unsigned long>(ctx.ell)));
      break;
    case Subroutine::MultiTrialFirstLoop:
    case Subroutine::MultiTrialSecondLoop: e = std::make_shared<LoopSsp>(s, ctx.threshold, ctx.bound); break;
    case Subroutine::MultiTrialFinal: e = std::make_shared<FinalSsp>(s, ctx.threshold); break;
    default: throw Error(Errc::UnknownSubroutine, "unknown subroutine");
  }
  return SuccessEvaluators{e, e, cfg.radius};
}

SuccessEvaluators ssp_wsp_for(std::string_view name, const Config& cfg, const SuccessContext& ctx) {
  return ssp_wsp_for(parse_subroutine(name), cfg, ctx);
}

}  // namespace d1lc
