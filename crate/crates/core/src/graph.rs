//! Directed graphs on `0..n` given by adjacency lists.
//!
//! The graph of an evolution algebra has an edge `i → j` whenever `ω_{ji} ≠ 0`,
//! i.e. `e_j` occurs in `e_i²`.

use std::collections::BTreeSet;

use crate::algebra::EvolutionAlgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    succ: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            succ: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Digraph::new(n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    /// `i → j` iff `e_j` occurs in `e_i²`.
    pub fn of_algebra(a: &EvolutionAlgebra) -> Self {
        let n = a.dim();
        let m = a.structure_matrix();
        Digraph::from_edges(
            n,
            (0..n).flat_map(|i| (0..n).filter(move |&j| !m.get(j, i).is_zero()).map(move |j| (i, j))),
        )
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if !self.succ[a].contains(&b) {
            self.succ[a].push(b);
        }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.succ[a].contains(&b)
    }

    pub fn reversed(&self) -> Digraph {
        let mut g = Digraph::new(self.len());
        for (a, out) in self.succ.iter().enumerate() {
            for &b in out {
                g.add_edge(b, a);
            }
        }
        g
    }

    /// Vertices reachable from `start` by paths of length at least one.
    pub fn descendants(&self, start: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<usize> = self.succ[start].clone();
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                stack.extend(self.succ[v].iter().copied());
            }
        }
        seen
    }

    /// `start` together with its descendants.
    pub fn closure(&self, start: usize) -> BTreeSet<usize> {
        let mut d = self.descendants(start);
        d.insert(start);
        d
    }

    /// Strongly connected components by Tarjan's algorithm, each sorted, in
    /// order of their smallest vertex.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut next = 0;
        let mut comps = Vec::new();
        // iterative DFS frames: (vertex, next successor position)
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut frames = vec![(root, 0usize)];
            index[root] = next;
            low[root] = next;
            next += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
                if *pos < self.succ[v].len() {
                    let w = self.succ[v][*pos];
                    *pos += 1;
                    if index[w] == usize::MAX {
                        index[w] = next;
                        low[w] = next;
                        next += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        frames.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    frames.pop();
                    if let Some(&(u, _)) = frames.last() {
                        low[u] = low[u].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack");
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comps.push(comp);
                    }
                }
            }
        }
        comps.sort_by_key(|c| c[0]);
        comps
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.len() <= 1 || self.strongly_connected_components().len() == 1
    }

    /// Connected components of the underlying undirected graph.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in 0..n {
            for &b in &self.succ[a] {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(v);
        }
        groups
    }

    pub fn is_weakly_connected(&self) -> bool {
        self.weak_components().len() <= 1
    }
}
