#pragma once

#include <map>
#include <vector>

#include "orbisymp/cocycle.hpp"
#include "orbisymp/rep.hpp"
#include "orbisymp/splitting.hpp"

namespace orbisymp {

enum class FlowFlavor { Length, Middle };

struct FlowSpec {
  int curve = 0;
  FlowFlavor flavor = FlowFlavor::Length;
  double t = 0.0;
};

// How one ambient generator transforms under the twist flows: it either
// generates part of a vertex group, survives as the stable letter of a
// non-tree edge, or is one of the two order-two generators straddling a full
// one-suborbifold curve.
struct GeneratorRole {
  enum class Kind { Vertex, StableLetter, ConePair };
  Kind kind = Kind::Vertex;
  int vertex = -1;  // owning piece (meaningful for every kind)
  int edge = -1;    // owning curve (StableLetter / ConePair only)

  bool operator==(const GeneratorRole&) const = default;
};

struct GraphEdge {
  int curve = -1;  // index into the splitting's curve list
  int head = -1;   // terminal vertex: the deeper endpoint of a tree edge
  int tail = -1;   // initial vertex
  bool in_tree = false;
  bool formal = false;  // full one-suborbifold: carries no graph topology
  // Ambient holonomy word generating the flow: the boundary generator of the
  // head piece (for a full one-suborbifold, the inverted product of the two
  // order-two generators).
  Word generator_word;

  bool operator==(const GraphEdge&) const = default;
};

// Splitting curves organised as a graph of groups over the pieces: a rooted
// spanning tree (lowest curve indices first, rooted at piece 0), the induced
// partial order, and a role for every ambient generator.
struct GraphOfGroups {
  OrbifoldSignature ambient;
  std::vector<GraphEdge> edges;
  std::vector<int> parent;                // tree parent per vertex, -1 at root
  std::vector<std::vector<bool>> below;   // below[q][r]: r is in q's subtree
  std::map<Generator, GeneratorRole> roles;

  int scc_count() const;     // simple closed curves among the edges
  int moment_size() const;   // 2 * scc_count + suborbifold count
};

// Organise the splitting curves of `splitting` (over ambient signature `sig`)
// into a GraphOfGroups. Throws InvalidSplittingError if the pieces are not
// spanned by the curves or some ambient generator cannot be assigned a role.
GraphOfGroups build_graph(const OrbifoldSignature& sig, const SplittingSpec& splitting);

// The twist flow along graph.edges[spec.curve] at time spec.t: conjugates the
// subtree below the curve (tree edges), right-translates the stable letter
// (non-tree edges), or conjugates the straddling order-two pair (full
// one-suborbifolds), always by exp(t * f#(holonomy)) with f# the derivative
// matrix of the chosen invariant. Middle flavor is unavailable on full
// one-suborbifolds (FlavorNotAvailableError). Relations and every curve's
// invariants are preserved exactly in exact arithmetic.
GroupRep twist_flow(const GroupRep& rep, const GraphOfGroups& graph, const FlowSpec& spec);

// Conserved quantities of the flows: log eigenvalue ratio of every curve
// holonomy in edge order, then middle log eigenvalue of the simple closed
// curves in edge order.
std::vector<double> moment_map(const GroupRep& rep, const GraphOfGroups& graph);

// Hamiltonian defect |omega(u_flow, v) + D_v f| at the representation: u_flow
// is the central finite-difference velocity cocycle of the flow at t = 0 with
// step h, f the flow's own invariant function, and D_v f the central finite
// difference of f along deform(rep, v, ±h). The relative sign is fixed by the
// pairing's orientation: the flows satisfy omega(u_flow, .) = -df.
double hamiltonian_residual(const GroupRep& rep, const GraphOfGroups& graph,
                            const FlowSpec& spec, const Cocycle& v, double h);

}  // namespace orbisymp
