//! Canonical labeling of rotation systems.
//!
//! Both the face structure of a simple 3-polytope and the embedded graphs of
//! the construction pipeline are stored as rotation systems (a cyclic
//! neighbor list per node). Combinatorial equivalence, allowing reflection,
//! is equivalence of rotation systems, and is decided here through a
//! canonical code: the lexicographically minimal breadth-first relabeling
//! over all (root, first-neighbor, orientation) choices.

/// Canonical code of a rotation system plus one witness relabeling.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalCode {
    /// Flattened code: for each node in canonical order, its degree followed
    /// by the canonical labels of its rotation, starting at the entry edge.
    pub code: Vec<u32>,
    /// `labeling[old] = canonical label` for one traversal achieving the code.
    pub labeling: Vec<usize>,
}

/// One rooted breadth-first code. `start` is an index into `adj[root]`,
/// `reverse` flips the global orientation.
pub fn rooted_code(adj: &[Vec<usize>], root: usize, start: usize, reverse: bool) -> CanonicalCode {
    let n = adj.len();
    const UNSET: usize = usize::MAX;
    let mut label = vec![UNSET; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut entry: Vec<usize> = vec![UNSET; n]; // position in adj[v] of the entry neighbor
    let mut next_label = 0usize;

    label[root] = next_label;
    next_label += 1;
    order.push(root);
    entry[root] = start;

    let mut code: Vec<u32> = Vec::with_capacity(2 * n + n);
    let mut qi = 0usize;
    while qi < order.len() {
        let v = order[qi];
        qi += 1;
        let deg = adj[v].len();
        code.push(deg as u32);
        for k in 0..deg {
            let pos = if reverse {
                (entry[v] + deg - k) % deg
            } else {
                (entry[v] + k) % deg
            };
            let u = adj[v][pos];
            if label[u] == UNSET {
                label[u] = next_label;
                next_label += 1;
                order.push(u);
                // the entry edge of u is the edge (v,u); find v in adj[u]
                entry[u] = adj[u].iter().position(|&w| w == v).unwrap();
            }
            code.push(label[u] as u32);
        }
    }
    debug_assert_eq!(order.len(), n, "rotation system must be connected");
    CanonicalCode { code, labeling: label }
}

/// Lexicographically minimal rooted code over all roots, rotation starts and
/// both orientations.
pub fn canonical_code(adj: &[Vec<usize>]) -> CanonicalCode {
    let mut best: Option<CanonicalCode> = None;
    for root in 0..adj.len() {
        for start in 0..adj[root].len() {
            for reverse in [false, true] {
                let cand = rooted_code(adj, root, start, reverse);
                if best.as_ref().is_none_or(|b| cand.code < b.code) {
                    best = Some(cand);
                }
            }
        }
    }
    best.expect("nonempty rotation system")
}

/// Relabel a rotation system by `perm` (node `i` becomes `perm[i]`),
/// preserving each cyclic order.
pub fn relabel(adj: &[Vec<usize>], perm: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); adj.len()];
    for (i, nbrs) in adj.iter().enumerate() {
        out[perm[i]] = nbrs.iter().map(|&u| perm[u]).collect();
    }
    out
}

/// Basic sanity of a rotation system: entries in range, no loops, symmetric
/// adjacency, no repeated neighbor (i.e. the underlying graph is simple).
pub fn check_rotation_system(adj: &[Vec<usize>]) -> Result<(), String> {
    let n = adj.len();
    for (i, nbrs) in adj.iter().enumerate() {
        for &u in nbrs {
            if u >= n {
                return Err(format!("node {i} lists out-of-range neighbor {u}"));
            }
            if u == i {
                return Err(format!("node {i} lists itself as a neighbor"));
            }
        }
        let mut sorted = nbrs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != nbrs.len() {
            return Err(format!("node {i} lists a neighbor twice"));
        }
        for &u in nbrs {
            if !adj[u].contains(&i) {
                return Err(format!("adjacency {i}-{u} is not symmetric"));
            }
        }
    }
    Ok(())
}

/// Is the underlying graph connected?
pub fn is_connected(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut cnt = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                cnt += 1;
                stack.push(u);
            }
        }
    }
    cnt == n
}

/// Vertex 3-connectivity by exhaustive removal of vertex pairs. Adequate for
/// the desk-scale graphs this library works with.
pub fn is_three_connected(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    if n < 4 {
        return false;
    }
    if !is_connected(adj) {
        return false;
    }
    let connected_without = |skip: &[usize]| -> bool {
        let mut seen = vec![false; n];
        for &s in skip {
            seen[s] = true;
        }
        let start = match (0..n).find(|v| !seen[*v]) {
            Some(s) => s,
            None => return true,
        };
        let mut stack = vec![start];
        seen[start] = true;
        let mut cnt = 1;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    cnt += 1;
                    stack.push(u);
                }
            }
        }
        cnt == n - skip.len()
    };
    for a in 0..n {
        for b in a + 1..n {
            if !connected_without(&[a, b]) {
                return false;
            }
        }
    }
    true
}
