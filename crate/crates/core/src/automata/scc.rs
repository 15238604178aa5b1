use std::collections::BTreeSet;

use super::alphabet::Symbol;
use super::StateId;

/// Strongly connected components of a transition graph together with the
/// condensation and per-component shape flags.
#[derive(Clone, Debug)]
pub struct SccPartition {
    /// Components in reverse topological order: every edge between distinct
    /// components goes from a later index to an earlier one.
    pub components: Vec<Vec<StateId>>,
    pub component_of: Vec<usize>,
    /// Successor components of each component (excluding itself).
    pub condensation: Vec<BTreeSet<usize>>,
    pub flags: Vec<SccFlags>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SccFlags {
    /// Singleton without a self-loop.
    pub is_trivial_cycle: bool,
    /// Every member has at most one distinct successor state inside the
    /// component.
    pub is_cycle: bool,
    /// Every member has at most one symbol leading back into the component.
    pub is_symbol_cycle: bool,
    pub all_final: bool,
    pub all_nonfinal: bool,
}

impl SccPartition {
    /// `edges(q)` lists the labelled out-edges of `q`.
    pub fn compute<F>(n: usize, finals: &[bool], edges: F) -> SccPartition
    where
        F: Fn(StateId) -> Vec<(Symbol, StateId)>,
    {
        let adj: Vec<Vec<(Symbol, StateId)>> = (0..n).map(&edges).collect();
        let components = tarjan(n, &adj);
        let mut component_of = vec![0; n];
        for (i, comp) in components.iter().enumerate() {
            for &q in comp {
                component_of[q] = i;
            }
        }
        let mut condensation = vec![BTreeSet::new(); components.len()];
        let mut flags = Vec::with_capacity(components.len());
        for (i, comp) in components.iter().enumerate() {
            let mut is_cycle = true;
            let mut is_symbol_cycle = true;
            let mut has_internal_edge = false;
            for &q in comp {
                let mut inner_targets = BTreeSet::new();
                let mut inner_symbols = 0;
                for &(_, r) in &adj[q] {
                    let c = component_of[r];
                    if c == i {
                        inner_targets.insert(r);
                        inner_symbols += 1;
                        has_internal_edge = true;
                    } else {
                        condensation[i].insert(c);
                    }
                }
                is_cycle &= inner_targets.len() <= 1;
                is_symbol_cycle &= inner_symbols <= 1;
            }
            flags.push(SccFlags {
                is_trivial_cycle: comp.len() == 1 && !has_internal_edge,
                is_cycle,
                is_symbol_cycle,
                all_final: comp.iter().all(|&q| finals[q]),
                all_nonfinal: comp.iter().all(|&q| !finals[q]),
            });
        }
        SccPartition {
            components,
            component_of,
            condensation,
            flags,
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn same(&self, p: StateId, q: StateId) -> bool {
        self.component_of[p] == self.component_of[q]
    }
}

/// Iterative Tarjan. Components come out in reverse topological order.
fn tarjan(n: usize, adj: &[Vec<(Symbol, StateId)>]) -> Vec<Vec<StateId>> {
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (node, next edge position)
        let mut call: Vec<(StateId, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos].1;
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
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
                    out.push(comp);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn condensation_is_reverse_topological() {
        // 0 -> 1 <-> 2 -> 3
        let edges = [vec![(0, 1)], vec![(0, 2)], vec![(0, 1), (1, 3)], vec![]];
        let p = SccPartition::compute(4, &[false; 4], |q| edges[q].clone());
        assert_eq!(p.len(), 3);
        for (i, succ) in p.condensation.iter().enumerate() {
            for &j in succ {
                assert!(j < i);
            }
        }
        assert!(p.same(1, 2));
        let c = p.component_of[1];
        assert!(p.flags[c].is_cycle);
        assert!(p.flags[p.component_of[3]].is_trivial_cycle);
    }
}
