#include "orbisymp/flows.hpp"

#include <cmath>
#include <numeric>
#include <queue>

#include "orbisymp/errors.hpp"
#include "orbisymp/linalg.hpp"
#include "orbisymp/symplectic.hpp"

namespace orbisymp {

namespace {

int find_root(std::vector<int>& uf, int v) {
  while (uf[v] != v) {
    uf[v] = uf[uf[v]];
    v = uf[v];
  }
  return v;
}

Mat3 project_traceless(const Mat3& m) {
  return m - (m.trace() / 3.0) * Mat3::Identity();
}

// Twisted generators are composed in extended precision and rounded once to
// storage. The twists conjugate whole subtrees, so any product noise lands
// directly on the relator defect of the flowed representation; one rounding
// keeps that contribution at the storage quantization floor.
using Mat3X = Eigen::Matrix<long double, 3, 3>;

Mat3 rounded(const Mat3X& m) { return m.cast<double>(); }

}  // namespace

int GraphOfGroups::scc_count() const {
  int n = 0;
  for (const GraphEdge& e : edges)
    if (!e.formal) ++n;
  return n;
}

int GraphOfGroups::moment_size() const {
  return static_cast<int>(edges.size()) + scc_count();
}

GraphOfGroups build_graph(const OrbifoldSignature& sig, const SplittingSpec& splitting) {
  if (!(sig == splitting.ambient()))
    throw InvalidSplittingError("splitting was built over a different ambient signature");

  GraphOfGroups graph;
  graph.ambient = sig;
  int vertices = static_cast<int>(splitting.pieces().size());

  // Edges in curve order; a full one-suborbifold is a formal loop at its piece.
  for (size_t c = 0; c < splitting.curves().size(); ++c) {
    const CurveRecord& record = splitting.curves()[c];
    GraphEdge edge;
    edge.curve = static_cast<int>(c);
    edge.formal = record.type == CurveType::FullSuborbifold;
    edge.head = edge.formal ? record.side_minus.piece : record.side_plus.piece;
    edge.tail = record.side_minus.piece;
    edge.generator_word = record.plus_word;
    if (edge.head < 0 || edge.head >= vertices || edge.tail < 0 || edge.tail >= vertices)
      throw InvalidSplittingError("curve side points outside the piece list");
    graph.edges.push_back(edge);
  }

  // Spanning tree, lowest curve indices first.
  std::vector<int> uf(vertices);
  std::iota(uf.begin(), uf.end(), 0);
  for (GraphEdge& edge : graph.edges) {
    if (edge.formal || edge.head == edge.tail) continue;
    int a = find_root(uf, edge.head);
    int b = find_root(uf, edge.tail);
    if (a == b) continue;
    uf[a] = b;
    edge.in_tree = true;
  }
  for (int v = 1; v < vertices; ++v)
    if (find_root(uf, v) != find_root(uf, 0))
      throw InvalidSplittingError("splitting curves do not connect all pieces");

  // Root the tree at piece 0 and orient every tree edge so that `head` is the
  // deeper endpoint; the flow generator is the boundary word seen from there.
  graph.parent.assign(vertices, -1);
  std::vector<bool> seen(vertices, false);
  seen[0] = true;
  std::queue<int> frontier;
  frontier.push(0);
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (GraphEdge& edge : graph.edges) {
      if (!edge.in_tree) continue;
      int other = -1;
      if (edge.head == v && !seen[edge.tail]) other = edge.tail;
      if (edge.tail == v && !seen[edge.head]) other = edge.head;
      if (other < 0) continue;
      const CurveRecord& record = splitting.curves()[edge.curve];
      Word oriented = record.plus_word;
      Word mirrored = record.minus_word.inverse();
      if (edge.head != other) {
        // The deeper endpoint was stored on the minus side: flip the
        // orientation so the flow generator is its boundary word.
        std::swap(edge.head, edge.tail);
        oriented = record.minus_word;
        mirrored = record.plus_word.inverse();
      }
      // Along a tree edge the two sides' boundary words name the same group
      // element; evaluate holonomy through the shorter spelling, whose partial
      // products carry less rounding and whose letters typically sit outside
      // the moved subtree.
      edge.generator_word =
          mirrored.letters().size() < oriented.letters().size() ? mirrored : oriented;
      seen[other] = true;
      graph.parent[other] = v;
      frontier.push(other);
    }
  }

  // Subtree membership: below[q][r] iff q is on the root path of r.
  graph.below.assign(vertices, std::vector<bool>(vertices, false));
  for (int r = 0; r < vertices; ++r) {
    int v = r;
    while (v != -1) {
      graph.below[v][r] = true;
      v = graph.parent[v];
    }
  }

  // Roles: single-letter inclusion images pin their ambient generator to the
  // piece; stable letters and straddling cone pairs come from the curves.
  auto claim = [&](const Generator& g, const GeneratorRole& role) {
    auto [it, inserted] = graph.roles.emplace(g, role);
    if (!inserted && !(it->second == role))
      throw InvalidSplittingError("ambient generator is claimed by two roles");
  };
  for (size_t p = 0; p < splitting.pieces().size(); ++p) {
    for (const auto& [piece_gen, image] : splitting.pieces()[p].inclusion.images) {
      if (image.letters().size() != 1) continue;
      GeneratorRole role;
      role.kind = GeneratorRole::Kind::Vertex;
      role.vertex = static_cast<int>(p);
      claim(image.letters().front().gen, role);
    }
  }
  for (const GraphEdge& edge : graph.edges) {
    const CurveRecord& record = splitting.curves()[edge.curve];
    if (edge.formal) {
      for (const Generator& g : record.cone_pair) {
        GeneratorRole role;
        role.kind = GeneratorRole::Kind::ConePair;
        role.vertex = edge.tail;
        role.edge = edge.curve;
        graph.roles[g] = role;  // overrides any single-letter claim
      }
    } else if (!edge.in_tree) {
      if (record.perp_word.letters().size() != 1)
        throw InvalidSplittingError("stable letter of a non-tree curve is not a generator");
      GeneratorRole role;
      role.kind = GeneratorRole::Kind::StableLetter;
      role.vertex = edge.tail;
      role.edge = edge.curve;
      claim(record.perp_word.letters().front().gen, role);
    }
  }
  for (const Generator& g : generator_list(sig))
    if (!graph.roles.count(g))
      throw InvalidSplittingError("ambient generator has no role in the graph of groups");

  return graph;
}

GroupRep twist_flow(const GroupRep& rep, const GraphOfGroups& graph, const FlowSpec& spec) {
  if (spec.curve < 0 || spec.curve >= static_cast<int>(graph.edges.size()))
    throw InvalidSplittingError("flow refers to a curve outside the graph");
  const GraphEdge& edge = graph.edges[spec.curve];
  if (edge.formal && spec.flavor == FlowFlavor::Middle)
    throw FlavorNotAvailableError(
        "full one-suborbifold curves only carry the length flow");

  Mat3 hol = rep.evaluate(edge.generator_word);
  InvariantFlavor flavor = spec.flavor == FlowFlavor::Length ? InvariantFlavor::Length
                                                             : InvariantFlavor::Middle;
  Mat3 generator = goldman_derivative(hol, flavor);
  Mat3X twist = matrix_exp(Mat3(spec.t * generator)).cast<long double>();
  Mat3X twist_inv = twist.inverse();

  GroupRep out = rep;
  for (const auto& [g, role] : graph.roles) {
    Mat3X m = rep.matrices.at(g).cast<long double>();
    if (edge.formal) {
      // Conjugate exactly the two order-two generators straddling the curve.
      if (role.kind == GeneratorRole::Kind::ConePair && role.edge == spec.curve)
        out.matrices[g] = rounded(twist * m * twist_inv);
    } else if (!edge.in_tree) {
      // Right-translate the stable letter of this curve only.
      if (role.kind == GeneratorRole::Kind::StableLetter && role.edge == spec.curve)
        out.matrices[g] = rounded(m * twist);
    } else {
      // Conjugate the subtree hanging below the curve; stable letters of other
      // curves follow their endpoints.
      int q = edge.head;
      if (role.kind == GeneratorRole::Kind::StableLetter) {
        const GraphEdge& other = graph.edges[role.edge];
        bool head_moves = graph.below[q][other.head];
        bool tail_moves = graph.below[q][other.tail];
        if (head_moves && tail_moves)
          out.matrices[g] = rounded(twist * m * twist_inv);
        else if (head_moves)
          out.matrices[g] = rounded(m * twist_inv);
        else if (tail_moves)
          out.matrices[g] = rounded(twist * m);
      } else if (graph.below[q][role.vertex]) {
        out.matrices[g] = rounded(twist * m * twist_inv);
      }
    }
  }
  return out;
}

std::vector<double> moment_map(const GroupRep& rep, const GraphOfGroups& graph) {
  std::vector<double> values;
  values.reserve(graph.moment_size());
  std::vector<HypInvariants> invariants;
  invariants.reserve(graph.edges.size());
  for (const GraphEdge& edge : graph.edges)
    invariants.push_back(classify(rep.evaluate(edge.generator_word)));
  for (const HypInvariants& inv : invariants) values.push_back(inv.ell);
  for (size_t e = 0; e < graph.edges.size(); ++e)
    if (!graph.edges[e].formal) values.push_back(invariants[e].middle);
  return values;
}

double hamiltonian_residual(const GroupRep& rep, const GraphOfGroups& graph,
                            const FlowSpec& spec, const Cocycle& v, double h) {
  FlowSpec forward = spec, backward = spec;
  forward.t = h;
  backward.t = -h;
  GroupRep plus = twist_flow(rep, graph, forward);
  GroupRep minus = twist_flow(rep, graph, backward);

  Cocycle u_flow;
  for (const Generator& g : generator_list(rep.signature)) {
    Mat3 delta =
        (plus.matrices.at(g) - minus.matrices.at(g)) / (2.0 * h) * rep.matrices.at(g).inverse();
    u_flow.values[g] = project_traceless(delta);
  }

  const Word& word = graph.edges[spec.curve].generator_word;
  auto invariant = [&](const GroupRep& at) {
    HypInvariants inv = classify(at.evaluate(word));
    return spec.flavor == FlowFlavor::Length ? inv.ell : inv.middle;
  };
  GroupRep ahead = deform(rep, v.values, h);
  GroupRep behind = deform(rep, v.values, -h);
  double derivative = (invariant(ahead) - invariant(behind)) / (2.0 * h);

  // With the pairing oriented as in the closed-form theorem, the flow velocity
  // contracts to minus the invariant's differential: omega(u_flow, .) = -df.
  return std::abs(omega_closed_form(rep, u_flow, v) + derivative);
}

}  // namespace orbisymp
