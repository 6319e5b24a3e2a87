#include "d1lc/mpc.hpp"

#include "d1lc/error.hpp"
#include "d1lc/prg.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

namespace d1lc {

MpcConfig MpcConfig::make(const Config& cfg, std::uint64_t n, std::uint64_t words) {
  MpcConfig m;
  m.phi = cfg.phi;
  m.delta = cfg.delta;
  m.n = n;
  m.local_space_words = std::max<std::uint64_t>(1, ceil_pow(std::max<std::uint64_t>(n, 1), cfg.phi));
  m.sort_rounds = cfg.sort_rounds;
  if (cfg.machine_count) {
    m.machine_count = *cfg.machine_count;
  } else {
    m.machine_count = 2 * n + (2 * words + m.local_space_words - 1) / m.local_space_words;
  }
  return m;
}

Placement assign_machines(const D1LCInstance& inst, const MpcConfig& cfg) {
  const std::uint64_t s = cfg.local_space_words;
  Placement p;
  const std::size_t n = inst.node_count();
  p.first_edge_machine.resize(n);
  p.first_palette_machine.resize(n);
  std::uint64_t next = 0;
  for (NodeId v = 0; v < n; ++v) {
    const std::uint64_t d = inst.degree(v);
    const std::uint64_t pal = inst.palette(v).size();
    p.first_edge_machine[v] = next;
    next += std::max<std::uint64_t>(1, (d + s - 1) / s);
    p.first_palette_machine[v] = next;
    next += (pal + s - 1) / s;
    p.peak_load = std::max({p.peak_load, std::min(d, s), std::min(pal, s)});
  }
  p.machines_used = next;
  if (next > cfg.machine_count) {
    throw Error(Errc::InsufficientGlobalSpace, "instance needs " + std::to_string(next) + " machines, have " +
                                                   std::to_string(cfg.machine_count));
  }
  return p;
}

MpcSimulator::MpcSimulator(MpcConfig cfg) : cfg_(std::move(cfg)), transcript_(0x7A11C0DEULL) {}

void MpcSimulator::mix(std::uint64_t value) noexcept { transcript_ = splitmix64(transcript_ ^ value); }

void MpcSimulator::add_rounds(std::uint64_t r) {
  stats_.rounds_elapsed += r;
  stats_.rounds_by_category[category_] += r;
}

void MpcSimulator::set_clock(RoundClock clock) {
  stats_.rounds_elapsed = clock.rounds;
  stats_.rounds_by_category = std::move(clock.by_category);
}

void MpcSimulator::charge(const std::string& primitive, std::uint64_t rounds) {
  stats_.primitive_invocations[primitive] += 1;
  add_rounds(rounds);
  mix(std::hash<std::string>{}(primitive) ^ (rounds << 32));
}

void MpcSimulator::note_load(std::uint64_t words) {
  if (words > cfg_.local_space_words) {
    throw Error(Errc::SpaceExceeded, "machine load " + std::to_string(words) + " exceeds local space " +
                                         std::to_string(cfg_.local_space_words));
  }
  stats_.peak_words_per_machine = std::max(stats_.peak_words_per_machine, words);
}

std::string MpcSimulator::set_category(std::string category) {
  std::swap(category, category_);
  return category;
}

void MpcSimulator::throw_insufficient(std::uint64_t words) const {
  throw Error(Errc::InsufficientGlobalSpace, std::to_string(words) + " records exceed global space");
}

std::vector<Message> MpcSimulator::exchange(std::vector<Message> messages) {
  std::unordered_map<std::uint64_t, std::uint64_t> sent, received;
  for (const auto& m : messages) {
    sent[m.src] += m.words;
    received[m.dst] += m.words;
  }
  for (const auto& [machine, w] : sent) {
    if (w > cfg_.local_space_words) {
      throw Error(Errc::SendOverflow,
                  "machine " + std::to_string(machine) + " sends " + std::to_string(w) + " words", machine);
    }
  }
  for (const auto& [machine, w] : received) {
    if (w > cfg_.local_space_words) {
      throw Error(Errc::ReceiveOverflow,
                  "machine " + std::to_string(machine) + " receives " + std::to_string(w) + " words", machine);
    }
    stats_.peak_words_per_machine = std::max(stats_.peak_words_per_machine, w);
  }
  std::sort(messages.begin(), messages.end(), [](const Message& a, const Message& b) {
    if (a.dst != b.dst) return a.dst < b.dst;
    if (a.src != b.src) return a.src < b.src;
    return a.seq < b.seq;
  });
  std::uint64_t h = transcript_ ^ (stats_.rounds_elapsed + 1);
  for (const auto& m : messages) {
    h = splitmix64(h ^ m.src);
    h = splitmix64(h ^ m.dst);
    h = splitmix64(h ^ (m.seq * 31 + m.words));
    h = splitmix64(h ^ m.digest);
    stats_.total_words += m.words;
  }
  transcript_ = h;
  stats_.total_messages += messages.size();
  add_rounds(1);
  return messages;
}

std::uint64_t MpcSimulator::local_round(const D1LCInstance& inst, const Placement& placement,
                                        std::span<const NodeId> senders, std::uint64_t words, std::uint64_t tag) {
  const std::uint64_t s = cfg_.local_space_words;
  if (words == 0) words = 1;
  std::vector<Message> pending;
  const Graph& g = inst.graph;
  for (NodeId v : senders) {
    auto nb = g.neighbors(v);
    for (std::size_t j = 0; j < nb.size(); ++j) {
      NodeId u = nb[j];
      auto back = g.neighbors(u);
      const std::size_t k = static_cast<std::size_t>(std::lower_bound(back.begin(), back.end(), v) - back.begin());
      Message m;
      m.src = placement.first_edge_machine[v] + j / s;
      m.dst = placement.first_edge_machine[u] + k / s;
      m.digest = splitmix64(tag ^ (static_cast<std::uint64_t>(inst.labels[v]) << 32) ^ inst.labels[u]);
      for (std::uint64_t left = words, part = 0; left > 0; ++part) {
        m.words = std::min(left, s);
        m.seq = (static_cast<std::uint64_t>(j) << 20) + part;
        pending.push_back(m);
        left -= m.words;
      }
    }
  }
  std::sort(pending.begin(), pending.end(), [](const Message& a, const Message& b) {
    if (a.dst != b.dst) return a.dst < b.dst;
    if (a.src != b.src) return a.src < b.src;
    return a.seq < b.seq;
  });
  std::uint64_t used = 0;
  if (pending.empty()) {
    exchange({});
    return 1;
  }
  while (!pending.empty()) {
    std::unordered_map<std::uint64_t, std::uint64_t> out_load, in_load;
    std::vector<Message> now, later;
    for (const auto& m : pending) {
      auto& o = out_load[m.src];
      auto& i = in_load[m.dst];
      if (o + m.words <= s && i + m.words <= s) {
        o += m.words;
        i += m.words;
        now.push_back(m);
      } else {
        later.push_back(m);
      }
    }
    exchange(std::move(now));
    ++used;
    pending = std::move(later);
  }
  return used;
}

std::vector<D1LCInstance> MpcSimulator::collect_ball(const D1LCInstance& inst, std::span<const NodeId> nodes,
                                                     unsigned radius) {
  const double delta = static_cast<double>(inst.graph.max_degree());
  const double need = std::pow(delta, 2.0 * radius);
  if (need > static_cast<double>(cfg_.local_space_words)) {
    throw Error(Errc::SpaceExceeded, "Delta^" + std::to_string(2 * radius) + " = " + std::to_string(need) +
                                         " exceeds local space " + std::to_string(cfg_.local_space_words));
  }
  std::vector<D1LCInstance> balls;
  balls.reserve(nodes.size());
  std::uint64_t peak = 0;
  for (NodeId v : nodes) {
    auto members = inst.graph.ball(v, radius);
    std::sort(members.begin(), members.end());
    std::vector<Palette> pals;
    std::vector<NodeId> labels;
    for (NodeId u : members) {
      pals.push_back(inst.palette(u));
      labels.push_back(u);
    }
    balls.push_back(D1LCInstance::create(inst.graph.induced(members), std::move(pals), std::move(labels)));
    peak = std::max<std::uint64_t>(peak, balls.back().words());
  }
  stats_.peak_words_per_machine = std::max(stats_.peak_words_per_machine, std::min(peak, cfg_.local_space_words));
  charge("collect_ball", radius);
  return balls;
}

std::uint64_t hash_state(const ColoringState& st, std::span<const NodeId> labels) {
  std::uint64_t h = 0xC01045ULL;
  for (NodeId v = 0; v < st.size(); ++v) {
    const std::uint64_t label = v < labels.size() ? labels[v] : v;
    const std::uint64_t tag = static_cast<std::uint64_t>(st.status(v));
    h = splitmix64(h ^ (label << 2) ^ tag);
    if (st.colored(v)) h = splitmix64(h ^ st.color(v));
  }
  return h;
}

}  // namespace d1lc
