//! Small graph utilities shared by the automata decision procedures.

/// Strongly connected components of a directed multigraph.
///
/// Returns the component index of every node; components are numbered in
/// the order Tarjan's algorithm completes them (reverse topological order).
pub(crate) fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNVISITED: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNVISITED; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    // explicit call stack of (node, next edge position)
    let mut calls: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        calls.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&(v, pos)) = calls.last() {
            if let Some(&w) = adj[v].get(pos) {
                calls.last_mut().expect("nonempty").1 += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(parent, _)) = calls.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

/// Shape of each strongly connected component, as seen by the
/// countability analyses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SccShape {
    /// No internal edge: no infinite path stays inside.
    Transient,
    /// Exactly one cycle: countably many paths through it.
    SimpleCycle,
    /// At least two distinct cycles: uncountably many infinite paths.
    Branching,
}

/// Classifies every node by the shape of its strongly connected component.
pub(crate) fn scc_shapes(adj: &[Vec<usize>]) -> Vec<SccShape> {
    let comp = tarjan_scc(adj);
    let count = comp.iter().map(|c| c + 1).max().unwrap_or(0);
    let mut nodes = vec![0usize; count];
    let mut edges = vec![0usize; count];
    for (v, succs) in adj.iter().enumerate() {
        nodes[comp[v]] += 1;
        edges[comp[v]] += succs.iter().filter(|&&w| comp[w] == comp[v]).count();
    }
    comp.iter()
        .map(|&c| match edges[c] {
            0 => SccShape::Transient,
            e if e == nodes[c] => SccShape::SimpleCycle,
            _ => SccShape::Branching,
        })
        .collect()
}

/// Marks every node that can reach (in zero or more steps) a marked target.
pub(crate) fn can_reach(adj: &[Vec<usize>], targets: &[bool]) -> Vec<bool> {
    let n = adj.len();
    let mut rev = vec![Vec::new(); n];
    for (v, succs) in adj.iter().enumerate() {
        for &w in succs {
            rev[w].push(v);
        }
    }
    let mut seen = targets.to_vec();
    let mut work: Vec<usize> = (0..n).filter(|&v| seen[v]).collect();
    while let Some(w) = work.pop() {
        for &v in &rev[w] {
            if !seen[v] {
                seen[v] = true;
                work.push(v);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_of_small_graph() {
        // 0 -> 1 -> 2 -> 1, 2 -> 3, 3 -> 3 (twice)
        let adj = vec![vec![1], vec![2], vec![1, 3], vec![3, 3]];
        let comp = tarjan_scc(&adj);
        assert_eq!(comp[1], comp[2]);
        assert_ne!(comp[0], comp[1]);
        assert_ne!(comp[3], comp[1]);
        let shapes = scc_shapes(&adj);
        assert_eq!(shapes, vec![SccShape::Transient, SccShape::SimpleCycle, SccShape::SimpleCycle, SccShape::Branching]);
    }

    #[test]
    fn backward_reachability() {
        let adj = vec![vec![1], vec![], vec![0]];
        assert_eq!(can_reach(&adj, &[false, true, false]), vec![true, true, true]);
        assert_eq!(can_reach(&adj, &[true, false, false]), vec![true, false, true]);
    }
}
