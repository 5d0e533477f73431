#include "expost/binary_geometry.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "expost/persuasion.hpp"

namespace expost {

namespace {

struct Line {
  Rational slope;
  Rational intercept;
  std::size_t id;

  Rational at(const Rational& x) const { return slope * x + intercept; }
};

struct Segment {
  Rational from;
  Rational to;
  std::size_t id;
};

struct Touch {
  std::size_t id;
  Rational x;
};

struct Envelope {
  std::vector<Segment> segments;
  std::vector<Touch> touches;
};

void bump(OpCounter* counter, std::size_t steps = 1) {
  if (counter != nullptr) counter->sweep_steps += steps;
}

// Orders by slope, then by higher intercept, then by lower id, so the first
// line of every run of parallel lines is the one that can reach the envelope.
void sort_lines(std::vector<Line>& lines, OpCounter* counter) {
  std::sort(lines.begin(), lines.end(), [counter](const Line& a, const Line& b) {
    if (counter != nullptr) ++counter->sort_comparisons;
    if (a.slope != b.slope) return a.slope < b.slope;
    if (a.intercept != b.intercept) return a.intercept > b.intercept;
    return a.id < b.id;
  });
}

Rational crossing(const Line& a, const Line& b) {
  return (a.intercept - b.intercept) / (b.slope - a.slope);
}

Rational envelope_value(const Envelope& env, const std::vector<Line>& by_id_lines,
                        const Rational& x) {
  auto it = std::upper_bound(env.segments.begin(), env.segments.end(), x,
                             [](const Rational& v, const Segment& s) { return v < s.from; });
  if (it != env.segments.begin()) --it;
  Rational best = by_id_lines[it->id].at(x);
  if (x == it->to && std::next(it) != env.segments.end()) {
    best = std::max(best, by_id_lines[std::next(it)->id].at(x));
  }
  return best;
}

// Upper envelope over [lo, hi] of lines already sorted by sort_lines.
// Segments have positive length; touches are lines that reach the envelope
// at a single point of [lo, hi] only.
Envelope upper_envelope(const std::vector<Line>& sorted, const std::vector<Line>& by_id,
                        const Rational& lo, const Rational& hi, OpCounter* counter) {
  std::vector<Line> stack;
  std::vector<Touch> candidates;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    bump(counter);
    const Line& line = sorted[i];
    if (!stack.empty() && stack.back().slope == line.slope) continue;
    while (stack.size() >= 2) {
      bump(counter);
      const Line& a = stack[stack.size() - 2];
      const Line& b = stack.back();
      const Rational ac = crossing(a, line);
      const Rational ab = crossing(a, b);
      if (ac > ab) break;
      if (ac == ab) candidates.push_back({b.id, ab});
      stack.pop_back();
    }
    stack.push_back(line);
  }

  Envelope env;
  for (std::size_t i = 0; i < stack.size(); ++i) {
    bump(counter);
    std::optional<Rational> left;
    std::optional<Rational> right;
    if (i > 0) left = crossing(stack[i - 1], stack[i]);
    if (i + 1 < stack.size()) right = crossing(stack[i], stack[i + 1]);
    const Rational from = left ? std::max(*left, lo) : lo;
    const Rational to = right ? std::min(*right, hi) : hi;
    if (from < to) {
      env.segments.push_back({from, to, stack[i].id});
    } else if (from == to) {
      candidates.push_back({stack[i].id, from});
    }
  }
  for (auto& c : candidates) {
    bump(counter);
    if (c.x < lo || c.x > hi) continue;
    if (by_id[c.id].at(c.x) == envelope_value(env, by_id, c.x)) env.touches.push_back(c);
  }
  return env;
}

Line receiver_line(const Game& game, std::size_t a) {
  return {game.receiver[a][0] - game.receiver[a][1], game.receiver[a][1], a};
}

Line sender_line(const Game& game, std::size_t a) {
  return {game.sender[a][0] - game.sender[a][1], game.sender[a][1], a};
}

std::size_t sender_choice(const Game& game, const std::vector<std::size_t>& tied,
                          const Rational& x, OpCounter* counter) {
  std::size_t best = tied.front();
  Rational best_value = sender_line(game, best).at(x);
  for (std::size_t a : tied) {
    bump(counter);
    Rational value = sender_line(game, a).at(x);
    if (value > best_value || (value == best_value && a < best)) {
      best = a;
      best_value = std::move(value);
    }
  }
  return best;
}

std::size_t find_breakpoint(const Vector& xs, const Rational& x) {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.end() || *it != x) throw std::logic_error("point " + to_string(x) + " is not a breakpoint");
  return static_cast<std::size_t>(it - xs.begin());
}

class Builder {
 public:
  explicit Builder(Rational start, Rational start_value) {
    f_.breakpoints.push_back(std::move(start));
    f_.point_values.push_back(std::move(start_value));
  }

  void piece(Rational slope, Rational intercept, Rational end, Rational end_value) {
    f_.slopes.push_back(std::move(slope));
    f_.intercepts.push_back(std::move(intercept));
    f_.breakpoints.push_back(std::move(end));
    f_.point_values.push_back(std::move(end_value));
  }

  PiecewiseLinear finish() { return std::move(f_); }

 private:
  PiecewiseLinear f_;
};

// Joins neighbouring pieces on the same line when the breakpoint between
// them lies on that line too.
PiecewiseLinear simplify(const PiecewiseLinear& f, OpCounter* counter) {
  Builder out(f.breakpoints.front(), f.point_values.front());
  Rational slope = f.slopes.front();
  Rational intercept = f.intercepts.front();
  for (std::size_t i = 1; i < f.num_pieces(); ++i) {
    bump(counter);
    const Rational& x = f.breakpoints[i];
    const bool same = f.slopes[i] == slope && f.intercepts[i] == intercept &&
                      f.point_values[i] == slope * x + intercept;
    if (same) continue;
    out.piece(slope, intercept, x, f.point_values[i]);
    slope = f.slopes[i];
    intercept = f.intercepts[i];
  }
  out.piece(slope, intercept, f.breakpoints.back(), f.point_values.back());
  return out.finish();
}

// x -> f(1 - x).
PiecewiseLinear reflect(const PiecewiseLinear& f, OpCounter* counter) {
  const std::size_t k = f.breakpoints.size();
  Builder out(1 - f.breakpoints[k - 1], f.point_values[k - 1]);
  for (std::size_t p = f.num_pieces(); p-- > 0;) {
    bump(counter);
    out.piece(-f.slopes[p], f.slopes[p] + f.intercepts[p], 1 - f.breakpoints[p],
              f.point_values[p]);
  }
  return out.finish();
}

// x -> max of f over [0, x].
PiecewiseLinear running_max(const PiecewiseLinear& f, OpCounter* counter) {
  Rational best = f.point_values.front();
  Builder out(f.breakpoints.front(), best);
  for (std::size_t p = 0; p < f.num_pieces(); ++p) {
    bump(counter);
    const Rational& lo = f.breakpoints[p];
    const Rational& hi = f.breakpoints[p + 1];
    const Rational start = f.piece_value(p, lo);
    const Rational end = f.piece_value(p, hi);
    best = std::max(best, start);
    if (end <= best) {
      out.piece(0, best, hi, std::max(best, f.point_values[p + 1]));
    } else if (start == best) {
      out.piece(f.slopes[p], f.intercepts[p], hi, std::max(end, f.point_values[p + 1]));
    } else {
      const Rational cross = (best - f.intercepts[p]) / f.slopes[p];
      out.piece(0, best, cross, best);
      out.piece(f.slopes[p], f.intercepts[p], hi, std::max(end, f.point_values[p + 1]));
    }
    best = std::max({best, end, f.point_values[p + 1]});
  }
  return out.finish();
}

PiecewiseLinear pointwise_min(const PiecewiseLinear& f, const PiecewiseLinear& g,
                              OpCounter* counter) {
  Builder out(f.breakpoints.front(), std::min(f.point_values.front(), g.point_values.front()));
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < f.num_pieces() && j < g.num_pieces()) {
    bump(counter);
    const Rational lo = std::max(f.breakpoints[i], g.breakpoints[j]);
    const Rational hi = std::min(f.breakpoints[i + 1], g.breakpoints[j + 1]);
    const Line a{f.slopes[i], f.intercepts[i], 0};
    const Line b{g.slopes[j], g.intercepts[j], 1};
    const Rational hi_value =
        std::min(hi == f.breakpoints[i + 1] ? f.point_values[i + 1] : a.at(hi),
                 hi == g.breakpoints[j + 1] ? g.point_values[j + 1] : b.at(hi));
    const Rational diff_lo = a.at(lo) - b.at(lo);
    const Rational diff_hi = a.at(hi) - b.at(hi);
    const Line& lower_left = sgn(diff_lo) < 0 || (sgn(diff_lo) == 0 && sgn(diff_hi) < 0) ? a : b;
    const Line& lower_right = sgn(diff_hi) < 0 || (sgn(diff_hi) == 0 && sgn(diff_lo) < 0) ? a : b;
    if (sgn(diff_lo) * sgn(diff_hi) < 0) {
      const Rational cross = crossing(a, b);
      out.piece(lower_left.slope, lower_left.intercept, cross, a.at(cross));
      out.piece(lower_right.slope, lower_right.intercept, hi, hi_value);
    } else {
      out.piece(lower_left.slope, lower_left.intercept, hi, hi_value);
    }
    if (hi == f.breakpoints[i + 1]) ++i;
    if (hi == g.breakpoints[j + 1]) ++j;
  }
  return out.finish();
}

std::vector<Point> upper_hull(std::vector<Point> points) {
  std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
    return a.x != b.x ? a.x < b.x : a.y > b.y;
  });
  std::vector<Point> hull;
  for (auto& p : points) {
    if (!hull.empty() && hull.back().x == p.x) continue;
    while (hull.size() >= 2) {
      const Point& o = hull[hull.size() - 2];
      const Point& a = hull.back();
      const Rational cross = (a.x - o.x) * (p.y - o.y) - (a.y - o.y) * (p.x - o.x);
      if (sgn(cross) < 0) break;
      hull.pop_back();
    }
    hull.push_back(std::move(p));
  }
  return hull;
}

Rational interpolate(const std::vector<Point>& chain, const Rational& x) {
  if (chain.empty() || x < chain.front().x || x > chain.back().x) {
    throw std::out_of_range("point " + to_string(x) + " outside the chain");
  }
  auto it = std::lower_bound(chain.begin(), chain.end(), x,
                             [](const Point& p, const Rational& v) { return p.x < v; });
  if (it->x == x) return it->y;
  const Point& a = *std::prev(it);
  const Point& b = *it;
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

}  // namespace

Rational PiecewiseLinear::piece_value(std::size_t piece, const Rational& x) const {
  return slopes[piece] * x + intercepts[piece];
}

Rational PiecewiseLinear::evaluate(const Rational& x) const {
  if (x < breakpoints.front() || x > breakpoints.back()) {
    throw std::out_of_range("point " + to_string(x) + " outside the domain");
  }
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), x);
  const auto index = static_cast<std::size_t>(it - breakpoints.begin());
  if (*it == x) return point_values[index];
  return piece_value(index - 1, x);
}

Rational PiecewiseLinear::left_limit(std::size_t breakpoint) const {
  return piece_value(breakpoint - 1, breakpoints[breakpoint]);
}

Rational PiecewiseLinear::right_limit(std::size_t breakpoint) const {
  return piece_value(breakpoint, breakpoints[breakpoint]);
}

bool PiecewiseLinear::is_continuous() const {
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (i > 0 && left_limit(i) != point_values[i]) return false;
    if (i + 1 < breakpoints.size() && right_limit(i) != point_values[i]) return false;
  }
  return true;
}

Rational ClosureChain::evaluate(const Rational& x) const { return interpolate(vertices, x); }

Vector ClosureChain::slopes() const {
  Vector out;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    out.push_back((vertices[i].y - vertices[i - 1].y) / (vertices[i].x - vertices[i - 1].x));
  }
  return out;
}

PiecewiseLinear ClosureChain::to_piecewise() const {
  Builder out(vertices.front().x, vertices.front().y);
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const Point& a = vertices[i - 1];
    const Point& b = vertices[i];
    const Rational slope = (b.y - a.y) / (b.x - a.x);
    out.piece(slope, a.y - slope * a.x, b.x, b.y);
  }
  return out.finish();
}

void require_binary(const Game& game) {
  if (game.num_states() != 2) {
    throw NotBinary("expected 2 states, game has " + std::to_string(game.num_states()));
  }
}

Partition compute_partition(const Game& game, OpCounter* counter) {
  require_binary(game);
  const std::size_t n = game.num_actions();
  std::vector<Line> lines;
  for (std::size_t a = 0; a < n; ++a) lines.push_back(receiver_line(game, a));
  std::vector<Line> by_id = lines;
  sort_lines(lines, counter);

  // Actions with identical receiver lines are indistinguishable to the
  // receiver; the first of each run represents the group.
  std::vector<std::vector<std::size_t>> members(n);
  std::vector<Line> representatives;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    bump(counter);
    if (!representatives.empty() && representatives.back().slope == lines[i].slope &&
        representatives.back().intercept == lines[i].intercept) {
      members[representatives.back().id].push_back(lines[i].id);
      continue;
    }
    representatives.push_back(lines[i]);
    members[lines[i].id].push_back(lines[i].id);
  }

  const Envelope env = upper_envelope(representatives, by_id, 0, 1, counter);

  Partition part;
  part.regions.assign(n, std::nullopt);
  part.thresholds.push_back(0);
  // Groups receiver-tied at each threshold, collected before sender choice.
  std::vector<std::vector<std::size_t>> tied_groups(1);

  for (const Segment& seg : env.segments) {
    bump(counter);
    const auto& group = members[seg.id];
    for (std::size_t a : group) part.regions[a] = std::make_pair(seg.from, seg.to);
    tied_groups.back().push_back(seg.id);
    if (group.size() == 1) {
      part.interval_actions.push_back(seg.id);
    } else {
      std::vector<Line> sender_lines;
      for (std::size_t a : group) sender_lines.push_back(sender_line(game, a));
      std::vector<Line> sender_by_id(n);
      for (const auto& l : sender_lines) sender_by_id[l.id] = l;
      sort_lines(sender_lines, counter);
      const Envelope sub = upper_envelope(sender_lines, sender_by_id, seg.from, seg.to, counter);
      for (std::size_t s = 0; s < sub.segments.size(); ++s) {
        part.interval_actions.push_back(sub.segments[s].id);
        if (s + 1 < sub.segments.size()) {
          part.thresholds.push_back(sub.segments[s].to);
          tied_groups.push_back({seg.id});
        }
      }
    }
    part.thresholds.push_back(seg.to);
    tied_groups.push_back({seg.id});
  }

  for (const Touch& t : env.touches) {
    bump(counter);
    const std::size_t index = find_breakpoint(part.thresholds, t.x);
    tied_groups[index].push_back(t.id);
    for (std::size_t a : members[t.id]) {
      if (!part.regions[a]) part.regions[a] = std::make_pair(t.x, t.x);
    }
  }

  for (std::size_t i = 0; i < part.thresholds.size(); ++i) {
    bump(counter);
    auto& groups = tied_groups[i];
    std::sort(groups.begin(), groups.end());
    groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
    std::vector<std::size_t> tied;
    for (std::size_t g : groups) tied.insert(tied.end(), members[g].begin(), members[g].end());
    part.threshold_actions.push_back(sender_choice(game, tied, part.thresholds[i], counter));
  }
  return part;
}

PiecewiseLinear vhat_curve(const Game& game, const Partition& partition, OpCounter* counter) {
  const auto value_at = [&](std::size_t a, const Rational& x) { return sender_line(game, a).at(x); };
  Builder out(partition.thresholds.front(),
              value_at(partition.threshold_actions.front(), partition.thresholds.front()));
  for (std::size_t i = 0; i < partition.interval_actions.size(); ++i) {
    bump(counter);
    const Line line = sender_line(game, partition.interval_actions[i]);
    const Rational& end = partition.thresholds[i + 1];
    out.piece(line.slope, line.intercept, end, value_at(partition.threshold_actions[i + 1], end));
  }
  return out.finish();
}

PiecewiseLinear vhat_curve(const Game& game) {
  return vhat_curve(game, compute_partition(game));
}

ClosureChain concave_closure(const PiecewiseLinear& curve) {
  std::vector<Point> points;
  for (std::size_t i = 0; i < curve.breakpoints.size(); ++i) {
    const Rational& x = curve.breakpoints[i];
    points.push_back({x, curve.point_values[i]});
    if (i > 0) points.push_back({x, curve.left_limit(i)});
    if (i + 1 < curve.breakpoints.size()) points.push_back({x, curve.right_limit(i)});
  }
  return {upper_hull(std::move(points))};
}

Rational expost_closure_value(const Game& game, const Belief& prior) {
  require_binary(game);
  check_dimensions(game, prior);
  const Partition part = compute_partition(game);
  const std::size_t base = best_response(game, prior).action_index;
  std::vector<Point> points;
  for (std::size_t a = 0; a < game.num_actions(); ++a) {
    if (!part.regions[a]) continue;
    for (const Rational& x : {part.regions[a]->first, part.regions[a]->second}) {
      const bool first_ok = sgn(x) == 0 || game.sender[a][0] >= game.sender[base][0];
      const bool second_ok = x == 1 || game.sender[a][1] >= game.sender[base][1];
      if (first_ok && second_ok) points.push_back({x, sender_line(game, a).at(x)});
    }
  }
  return interpolate(upper_hull(std::move(points)), prior[0]);
}

QuasiconcaveClosure quasiconcave_closure(const PiecewiseLinear& curve, OpCounter* counter) {
  const PiecewiseLinear left = simplify(running_max(curve, counter), counter);
  const PiecewiseLinear right =
      simplify(reflect(running_max(reflect(curve, counter), counter), counter), counter);
  QuasiconcaveClosure qc;
  qc.closure = simplify(pointwise_min(left, right, counter), counter);
  const PiecewiseLinear& f = qc.closure;
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i) {
    bump(counter);
    const bool edge = i == 0 || i + 1 == f.breakpoints.size();
    const bool jump = !edge && (f.left_limit(i) != f.point_values[i] ||
                                f.right_limit(i) != f.point_values[i]);
    if (edge || jump) qc.chain.vertices.push_back({f.breakpoints[i], f.point_values[i]});
  }
  return qc;
}

PiecewiseLinear smoothed_quasiconcave_closure(const QuasiconcaveClosure& qc, OpCounter* counter) {
  bump(counter, qc.chain.vertices.size());
  return qc.chain.to_piecewise();
}

bool gamma_is_concave(const PiecewiseLinear& gamma, OpCounter* counter) {
  for (std::size_t i = 1; i < gamma.num_pieces(); ++i) {
    bump(counter);
    if (gamma.slopes[i] > gamma.slopes[i - 1]) return false;
  }
  return true;
}

bool decide_expost_ir(const Game& game, OpCounter* counter) {
  const Partition part = compute_partition(game, counter);
  const PiecewiseLinear vhat = vhat_curve(game, part, counter);
  const QuasiconcaveClosure qc = quasiconcave_closure(vhat, counter);
  return gamma_is_concave(smoothed_quasiconcave_closure(qc, counter), counter);
}

BinaryAnalysis analyze_binary(const Game& game) {
  BinaryAnalysis out;
  out.partition = compute_partition(game);
  out.vhat = vhat_curve(game, out.partition);
  out.concave = concave_closure(out.vhat);
  out.quasiconcave = quasiconcave_closure(out.vhat);
  out.gamma = smoothed_quasiconcave_closure(out.quasiconcave);
  out.expost_ir = gamma_is_concave(out.gamma);
  return out;
}

Vector sample_points(const BinaryAnalysis& analysis) {
  Vector xs = analysis.vhat.breakpoints;
  for (const auto& p : analysis.concave.vertices) xs.push_back(p.x);
  xs.insert(xs.end(), analysis.quasiconcave.closure.breakpoints.begin(),
            analysis.quasiconcave.closure.breakpoints.end());
  xs.insert(xs.end(), analysis.gamma.breakpoints.begin(), analysis.gamma.breakpoints.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  Vector out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out.push_back((xs[i - 1] + xs[i]) / 2);
    out.push_back(xs[i]);
  }
  return out;
}

void write_curves_csv(std::ostream& out, const BinaryAnalysis& analysis, bool decimal) {
  const char* names[] = {"x", "vhat", "concave", "quasiconcave", "gamma"};
  for (std::size_t c = 0; c < 5; ++c) {
    if (c > 0) out << ',';
    out << names[c];
    if (decimal) out << ',' << names[c] << "_decimal";
  }
  out << '\n';
  for (const Rational& x : sample_points(analysis)) {
    const Rational cells[] = {x, analysis.vhat.evaluate(x), analysis.concave.evaluate(x),
                              analysis.quasiconcave.closure.evaluate(x),
                              analysis.gamma.evaluate(x)};
    for (std::size_t c = 0; c < 5; ++c) {
      if (c > 0) out << ',';
      out << to_string(cells[c]);
      if (decimal) out << ',' << to_double(cells[c]);
    }
    out << '\n';
  }
}

}  // namespace expost
