//! Independent brute-force reference implementations.
//!
//! Everything here recomputes an invariant along a second, slower route:
//! exhaustive search instead of the production algorithms. The verification
//! suites compare the two routes; nothing here is used by the fast paths.

use crate::belts::Belt;
use crate::polytope::SimplePolytope3;
use crate::subset::OmegaSubset;

/// All k-belts by exhaustive search over k-subsets and cyclic orders.
pub fn belts_brute_force(p: &SimplePolytope3, k: usize) -> Vec<Belt> {
    let m = p.m();
    let mut out = Vec::new();
    let mut subset = vec![0usize; k];

    fn choose(
        p: &SimplePolytope3,
        subset: &mut Vec<usize>,
        depth: usize,
        start: usize,
        k: usize,
        out: &mut Vec<Belt>,
    ) {
        if depth == k {
            // try every cyclic order of this subset (fix the first element)
            let mut rest: Vec<usize> = subset[1..].to_vec();
            permute(p, subset[0], &mut rest, 0, out);
            return;
        }
        for v in start..p.m() {
            subset[depth] = v;
            choose(p, subset, depth + 1, v + 1, k, out);
        }
    }

    fn permute(
        p: &SimplePolytope3,
        first: usize,
        rest: &mut Vec<usize>,
        depth: usize,
        out: &mut Vec<Belt>,
    ) {
        if depth == rest.len() {
            let mut cycle = Vec::with_capacity(rest.len() + 1);
            cycle.push(first);
            cycle.extend_from_slice(rest);
            if is_belt(p, &cycle) {
                let belt = Belt::canonicalize(cycle);
                if !out.contains(&belt) {
                    out.push(belt);
                }
            }
            return;
        }
        for i in depth..rest.len() {
            rest.swap(depth, i);
            permute(p, first, rest, depth + 1, out);
            rest.swap(depth, i);
        }
    }

    if k >= 3 && k <= m {
        choose(p, &mut subset, 0, 0, k, &mut out);
    }
    out.sort();
    out
}

/// The k-belt axioms checked literally on a cyclic face sequence.
pub fn is_belt(p: &SimplePolytope3, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 3 {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if p.are_adjacent(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    // no three members share a vertex
    for v in p.vertices() {
        if v.iter().filter(|f| cycle.contains(f)).count() == 3 {
            return false;
        }
    }
    true
}

/// Isomorphism by adjacency-refined backtracking over face bijections,
/// independent of the canonical-form machinery.
pub fn isomorphism_backtrack(p: &SimplePolytope3, q: &SimplePolytope3) -> Option<Vec<usize>> {
    if p.m() != q.m() {
        return None;
    }
    let m = p.m();
    let mut map = vec![usize::MAX; m];
    let mut used = vec![false; m];

    fn extend(
        p: &SimplePolytope3,
        q: &SimplePolytope3,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let m = p.m();
        let f = match (0..m).find(|&f| map[f] == usize::MAX) {
            None => return true,
            Some(f) => f,
        };
        // candidate images: same degree, compatible with mapped neighbors
        'cand: for g in 0..m {
            if used[g] || q.degree(g) != p.degree(f) {
                continue;
            }
            for nb in 0..m {
                if map[nb] != usize::MAX && p.are_adjacent(f, nb) != q.are_adjacent(g, map[nb]) {
                    continue 'cand;
                }
            }
            map[f] = g;
            used[g] = true;
            if extend(p, q, map, used) {
                return true;
            }
            map[f] = usize::MAX;
            used[g] = false;
        }
        false
    }

    if extend(p, q, &mut map, &mut used) {
        // adjacency-preserving bijections of 3-connected planar graphs are
        // combinatorial equivalences (Whitney)
        Some(map)
    } else {
        None
    }
}

/// Reduced Betti numbers of the full subcomplex on `omega`, via GF(2)
/// boundary matrices with naive elimination. Independent of the exact
/// integer route (valid as a rank oracle because these complexes have
/// torsion-free homology, which the integer route asserts).
pub fn subcomplex_betti_gf2(p: &SimplePolytope3, omega: OmegaSubset) -> [i64; 4] {
    let nerve = p.nerve();
    if omega.is_empty() {
        return [1, 0, 0, 0];
    }
    let verts: Vec<usize> = omega.iter().collect();
    let vidx = |v: usize| verts.binary_search(&v).unwrap();
    let edges: Vec<(usize, usize)> = nerve
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| omega.contains(a) && omega.contains(b))
        .collect();
    let tris: Vec<[usize; 3]> = nerve
        .triangles()
        .iter()
        .copied()
        .filter(|t| t.iter().all(|&x| omega.contains(x)))
        .collect();
    // boundary_1: edges -> vertices
    let mut d1: Vec<Vec<u8>> = vec![vec![0; edges.len()]; verts.len()];
    for (j, &(a, b)) in edges.iter().enumerate() {
        d1[vidx(a)][j] ^= 1;
        d1[vidx(b)][j] ^= 1;
    }
    // boundary_2: triangles -> edges
    let eidx = |a: usize, b: usize| edges.binary_search(&(a.min(b), a.max(b))).unwrap();
    let mut d2: Vec<Vec<u8>> = vec![vec![0; tris.len()]; edges.len()];
    for (j, t) in tris.iter().enumerate() {
        d2[eidx(t[0], t[1])][j] ^= 1;
        d2[eidx(t[0], t[2])][j] ^= 1;
        d2[eidx(t[1], t[2])][j] ^= 1;
    }
    let r1 = gf2_rank(&mut d1);
    let r2 = gf2_rank(&mut d2);
    let nv = verts.len() as i64;
    let ne = edges.len() as i64;
    let nt = tris.len() as i64;
    let b0 = nv - r1 - 1; // reduced
    let b1 = ne - r1 - r2;
    let b2 = nt - r2;
    [0, b0, b1, b2]
}

fn gf2_rank(mat: &mut [Vec<u8>]) -> i64 {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let pivot = (row..rows).find(|&r| mat[r][col] == 1);
        if let Some(p) = pivot {
            mat.swap(row, p);
            for r in 0..rows {
                if r != row && mat[r][col] == 1 {
                    for c in col..cols {
                        mat[r][c] ^= mat[row][c];
                    }
                }
            }
            row += 1;
            rank += 1;
        }
    }
    rank as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    #[test]
    fn brute_force_belts_of_cube() {
        let belts = belts_brute_force(&construct::cube(), 4);
        assert_eq!(belts.len(), 3);
    }

    #[test]
    fn brute_force_belts_of_tetrahedron() {
        assert!(belts_brute_force(&construct::simplex(), 3).is_empty());
    }

    #[test]
    fn backtrack_isomorphism_agrees_with_canonical() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let p = construct::associahedron();
        let mut perm: Vec<usize> = (0..p.m()).collect();
        perm.shuffle(&mut rng);
        let q = p.relabel(&perm).unwrap();
        assert!(isomorphism_backtrack(&p, &q).is_some());
        assert!(p.is_isomorphic(&q));
        let r = construct::prism(7).unwrap();
        assert!(isomorphism_backtrack(&p, &r).is_none() || p.m() != r.m());
    }
}
