//! Explicit reachability-graph construction and transitive closures.

use super::StateError;
use crate::net::{Marking, PetriNet};
use std::collections::HashMap;
use std::fmt::Write as _;

/// Finite (possibly truncated) portion of the reachability graph.
#[derive(Clone, Debug)]
pub struct ReachGraph {
    pub nodes: Vec<Marking>,
    /// Sorted successor indices per node.
    pub edges: Vec<Vec<usize>>,
    pub initial: usize,
    /// True iff every node's successor set is fully represented.
    pub complete: bool,
    /// First-discovery parent: (predecessor node, firing transition).
    pub parent: Vec<Option<(usize, usize)>>,
    index: HashMap<Marking, usize>,
}

impl ReachGraph {
    pub fn node_id(&self, m: &Marking) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Transition sequence from the initial node to `node`, replayable on
    /// the source net.
    pub fn witness_path(&self, node: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut cur = node;
        while let Some((prev, t)) = self.parent[cur] {
            path.push(t);
            cur = prev;
        }
        path.reverse();
        path
    }

    /// Graphviz rendering; markings label the nodes, the initial node is
    /// double-circled.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {name} {{");
        for (i, m) in self.nodes.iter().enumerate() {
            let shape = if i == self.initial { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  n{i} [label=\"{m}\", shape={shape}];");
        }
        for (i, succs) in self.edges.iter().enumerate() {
            for &j in succs {
                let _ = writeln!(s, "  n{i} -> n{j};");
            }
        }
        if !self.complete {
            let _ = writeln!(s, "  // truncated: exploration hit the node cap");
        }
        s.push_str("}\n");
        s
    }
}

/// Breadth-first exploration from the initial marking, transitions tried in
/// declaration order. Deterministic: identical nets yield identical node
/// orderings. Partiality is encoded in `complete`, never in an error.
pub fn explore(net: &PetriNet, cap: usize) -> ReachGraph {
    assert!(cap >= 1, "cap must allow at least the initial marking");
    let mut g = ReachGraph {
        nodes: vec![net.initial().clone()],
        edges: Vec::new(),
        initial: 0,
        complete: true,
        parent: vec![None],
        index: HashMap::new(),
    };
    g.index.insert(net.initial().clone(), 0);
    let mut i = 0;
    while i < g.nodes.len() {
        let m = g.nodes[i].clone();
        let mut succs = Vec::new();
        for (next, t) in net.successors_with_witness(&m) {
            match g.index.get(&next) {
                Some(&j) => succs.push(j),
                None => {
                    if g.nodes.len() < cap {
                        let j = g.nodes.len();
                        g.index.insert(next.clone(), j);
                        g.nodes.push(next);
                        g.parent.push(Some((i, t)));
                        succs.push(j);
                    } else {
                        g.complete = false;
                    }
                }
            }
        }
        succs.sort_unstable();
        succs.dedup();
        g.edges.push(succs);
        i += 1;
    }
    g
}

/// Queryable reflexive-transitive (`star`) and strict (`plus`) closures.
#[derive(Clone, Debug)]
pub struct Closure {
    star: Vec<Vec<bool>>,
    edges: Vec<Vec<usize>>,
}

impl Closure {
    /// `u ->* v`
    pub fn star(&self, u: usize, v: usize) -> bool {
        self.star[u][v]
    }

    /// `u ->+ v`: one edge followed by `->*`.
    pub fn plus(&self, u: usize, v: usize) -> bool {
        self.edges[u].iter().any(|&w| self.star[w][v])
    }
}

/// Per-node BFS; requires a complete graph, since closure over a truncated
/// edge relation would understate reachability.
pub fn transitive_closure(g: &ReachGraph) -> Result<Closure, StateError> {
    if !g.complete {
        return Err(StateError::IncompleteGraph);
    }
    let n = g.nodes.len();
    let mut star = vec![vec![false; n]; n];
    for s in 0..n {
        let row = &mut star[s];
        row[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in &g.edges[u] {
                if !row[v] {
                    row[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    Ok(Closure { star, edges: g.edges.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::parse_net;

    #[test]
    fn deadlocked_initial_is_single_node() {
        let net = parse_net("net a\nplace p init 0\ntrans t\nin p:1").unwrap();
        let g = explore(&net, 10);
        assert_eq!(g.len(), 1);
        assert!(g.complete);
        assert!(g.edges[0].is_empty());
    }

    #[test]
    fn unbounded_chain_truncates() {
        let net = parse_net("net a\nplace p init 0\ntrans t\nout p:1").unwrap();
        let g = explore(&net, 100);
        assert_eq!(g.len(), 100);
        assert!(!g.complete);
    }

    #[test]
    fn witness_replays() {
        let net = parse_net(
            "net a\nplace p1 init 2\nplace p2 init 0\ntrans t\nin p1:1\nout p2:1",
        )
        .unwrap();
        let g = explore(&net, 10);
        assert!(g.complete);
        let target = Marking::from_u64s(&[0, 2]);
        let id = g.node_id(&target).unwrap();
        let path = g.witness_path(id);
        let mut m = net.initial().clone();
        for t in path {
            m = net.fire(&m, t).unwrap();
        }
        assert_eq!(m, target);
    }

    #[test]
    fn deterministic_ordering() {
        let text = "net a\nplace p init 3\ntrans t1\nin p:1\ntrans t2\nin p:2";
        let g1 = explore(&parse_net(text).unwrap(), 50);
        let g2 = explore(&parse_net(text).unwrap(), 50);
        assert_eq!(g1.nodes, g2.nodes);
        assert_eq!(g1.edges, g2.edges);
    }

    #[test]
    fn closure_on_single_node() {
        let net = parse_net("net a\nplace p init 0").unwrap();
        let g = explore(&net, 5);
        let c = transitive_closure(&g).unwrap();
        assert!(c.star(0, 0));
        assert!(!c.plus(0, 0));
    }

    #[test]
    fn closure_on_self_loop() {
        let net = parse_net("net a\nplace p init 1\ntrans t\nin p:1\nout p:1").unwrap();
        let g = explore(&net, 5);
        assert_eq!(g.len(), 1);
        let c = transitive_closure(&g).unwrap();
        assert!(c.star(0, 0));
        assert!(c.plus(0, 0));
    }

    #[test]
    fn closure_requires_complete() {
        let net = parse_net("net a\nplace p init 0\ntrans t\nout p:1").unwrap();
        let g = explore(&net, 3);
        assert!(matches!(transitive_closure(&g), Err(StateError::IncompleteGraph)));
    }

    #[test]
    fn closure_matches_chain() {
        // 2 tokens drain one at a time: (2) -> (1) -> (0)
        let net = parse_net("net a\nplace p init 2\ntrans t\nin p:1").unwrap();
        let g = explore(&net, 10);
        let c = transitive_closure(&g).unwrap();
        assert!(c.star(0, 2));
        assert!(c.plus(0, 2));
        assert!(!c.star(2, 0));
        assert!(!c.plus(1, 1));
    }

    #[test]
    fn dot_export_shape() {
        let net = parse_net("net a\nplace p init 1\ntrans t\nin p:1").unwrap();
        let dot = explore(&net, 10).to_dot("a");
        assert!(dot.contains("doublecircle"));
        assert!(dot.contains("n0 -> n1"));
    }
}
