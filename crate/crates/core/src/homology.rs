//! Reduced (co)homology of full subcomplexes of the nerve.
//!
//! Two routes are implemented. The fast route exploits that every proper
//! full subcomplex of a triangulated 2-sphere has vanishing second homology
//! and torsion-free first homology, so all reduced Betti numbers follow
//! from counting vertices, edges, triangles and connected components. The
//! matrix route computes boundary-matrix ranks over the integers with a
//! Smith-normal-form fallback and certifies the absence of torsion; it is
//! the reference the fast route is verified against.

use crate::error::{PolyError, Result};
use crate::polytope::NerveComplex;
use crate::subset::OmegaSubset;

/// Reduced Betti numbers (b_{-1}, b_0, b_1, b_2) of one full subcomplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Betti(pub [i64; 4]);

impl Betti {
    pub fn b(&self, d: i32) -> i64 {
        self.0[(d + 1) as usize]
    }
}

/// Per-subset reduced Betti numbers of every full subcomplex, plus cached
/// component counts. Indexed by the subset bitmask.
pub struct BettiTable {
    pub m: usize,
    /// number of connected components of K_omega (0 for the empty set)
    pub components: Vec<u16>,
    pub b0: Vec<u16>,
    pub b1: Vec<u16>,
}

impl BettiTable {
    pub fn betti(&self, omega: OmegaSubset) -> Betti {
        let i = omega.0 as usize;
        if omega.is_empty() {
            return Betti([1, 0, 0, 0]);
        }
        let full = OmegaSubset::full(self.m);
        let b2 = i64::from(omega == full);
        Betti([0, self.b0[i] as i64, self.b1[i] as i64, b2])
    }

    /// Rank of the degree-k cohomology of the moment-angle manifold,
    /// summing the Hochster pieces.
    pub fn h_rank(&self, k: usize) -> i64 {
        let mut total = 0i64;
        if k == 0 || k == self.m + 3 {
            return 1;
        }
        for omega in OmegaSubset::all(self.m) {
            let b = self.betti(omega);
            let s = omega.len();
            // piece H~^{d}(K_omega) sits in degree s + d + 1
            for d in -1i32..=2 {
                if s as i64 + d as i64 + 1 == k as i64 {
                    total += b.b(d);
                }
            }
        }
        total
    }

    /// Aggregated bigraded rank beta^{-i, 2j}: sum of b_{j-i-1} over
    /// subsets of size j.
    pub fn bigraded(&self, i: usize, j: usize) -> i64 {
        let mut total = 0;
        for omega in OmegaSubset::all(self.m) {
            if omega.len() == j {
                let d = j as i32 - i as i32 - 1;
                if (-1..=2).contains(&d) {
                    total += self.betti(omega).b(d);
                }
            }
        }
        total
    }
}

/// Compute the full Betti table by dynamic programming over subsets.
///
/// Components are maintained incrementally: the component labeling of
/// `omega` is obtained from `omega` minus its lowest vertex by a local
/// union step. Edge and triangle counts come from popcounts, and
/// `b1 = c + e - v - t` (every proper full subcomplex has `rank d2 = t`).
pub fn betti_table(nerve: &NerveComplex) -> BettiTable {
    let m = nerve.vertex_count();
    assert!(m <= 22, "subset table limited to m <= 22");
    let size = 1usize << m;
    let mut components = vec![0u16; size];
    let mut b0 = vec![0u16; size];
    let mut b1 = vec![0u16; size];
    let mut edge_cnt = vec![0u16; size];
    let mut tri_cnt = vec![0u16; size];
    // per-vertex triangle completions: pairs (other two vertices) as masks
    let mut tri_pairs: Vec<Vec<u32>> = vec![Vec::new(); m];
    for t in nerve.triangles() {
        for i in 0..3 {
            let a = t[i];
            let others: Vec<usize> = t.iter().copied().filter(|&x| x != a).collect();
            tri_pairs[a].push((1u32 << others[0]) | (1u32 << others[1]));
        }
    }
    // component labels per subset, stored packed: label of each member
    // in [0, m); scratch vectors reused across subsets
    let mut labels: Vec<Vec<u8>> = vec![Vec::new(); size];
    labels[0] = Vec::new();

    for mask in 1usize..size {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let rest_label = labels[rest].clone();
        // rest's members in increasing order correspond to rest_label slots
        let nbr_mask = nerve.adjacency_mask(v) & rest as u32;
        let e_new = nbr_mask.count_ones() as u16;
        edge_cnt[mask] = edge_cnt[rest] + e_new;
        let mut t_new = 0u16;
        for &pm in &tri_pairs[v] {
            if pm & rest as u32 == pm {
                t_new += 1;
            }
        }
        // each triangle at v counted once (pairs listed per vertex once)
        tri_cnt[mask] = tri_cnt[rest] + t_new;

        // components: v starts as a new component, then unite with the
        // components of its neighbors inside rest
        let mut label = Vec::with_capacity(rest_label.len() + 1);
        // position of each member of rest in sorted order
        // members of mask sorted ascending: v is the smallest
        label.push(0u8); // v gets fresh label 0 (shifted later)
        for &l in &rest_label {
            label.push(l + 1);
        }
        // unite: neighbors of v among rest
        if nbr_mask != 0 {
            // collect labels to merge into v's label
            let mut merge = [false; 32];
            let mut idx = 0usize;
            let mut rm = rest as u32;
            let mut pos = 1usize;
            while rm != 0 {
                let u = rm.trailing_zeros() as usize;
                rm &= rm - 1;
                if nbr_mask >> u & 1 == 1 {
                    merge[label[pos] as usize] = true;
                }
                idx += 1;
                let _ = idx;
                pos += 1;
            }
            for l in label.iter_mut() {
                if merge[*l as usize] {
                    *l = 0;
                }
            }
        }
        // normalize labels to 0..c
        let mut remap = [u8::MAX; 33];
        let mut next = 0u8;
        for l in label.iter_mut() {
            if remap[*l as usize] == u8::MAX {
                remap[*l as usize] = next;
                next += 1;
            }
            *l = remap[*l as usize];
        }
        let c = next as u16;
        components[mask] = c;
        labels[mask] = label;
        b0[mask] = c - 1;
        let vcount = mask.count_ones() as i64;
        let b1v = c as i64 + edge_cnt[mask] as i64 - vcount - tri_cnt[mask] as i64;
        debug_assert!(b1v >= 0 || mask == size - 1);
        // for the full sphere b1 = 0 and b2 = 1: c + e - v - t = -1 there
        b1[mask] = if mask == size - 1 { 0 } else { b1v as u16 };
    }
    BettiTable { m, components, b0, b1 }
}

/// The spec-level table operation with an explicit size gate: the cost is
/// one pass over all 2^m subsets.
pub fn bigraded_table(nerve: &NerveComplex, max_m: usize) -> Result<BettiTable> {
    let m = nerve.vertex_count();
    if m > max_m || m > 22 {
        return Err(PolyError::SizeBound(format!(
            "bigraded table needs 2^m subsets; m = {m} exceeds the bound {}",
            max_m.min(22)
        )));
    }
    Ok(betti_table(nerve))
}

/// The matrix route: reduced Betti numbers of one full subcomplex via exact
/// integer elimination, certifying torsion-freeness of H_1 by a Smith form
/// check of the triangle boundary matrix.
pub fn subcomplex_betti_matrix(nerve: &NerveComplex, omega: OmegaSubset) -> Result<Betti> {
    if omega.is_empty() {
        return Ok(Betti([1, 0, 0, 0]));
    }
    let verts: Vec<usize> = omega.iter().collect();
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
    let vidx = |v: usize| verts.binary_search(&v).unwrap();
    let eidx = |a: usize, b: usize| edges.binary_search(&(a.min(b), a.max(b))).unwrap();

    // d1: edges -> vertices, entries -1/+1
    let mut d1 = IntMatrix::zero(verts.len(), edges.len());
    for (j, &(a, b)) in edges.iter().enumerate() {
        d1.set(vidx(a), j, -1);
        d1.set(vidx(b), j, 1);
    }
    // d2: triangles -> edges, standard signs on sorted triples
    let mut d2 = IntMatrix::zero(edges.len(), tris.len());
    for (j, t) in tris.iter().enumerate() {
        d2.set(eidx(t[1], t[2]), j, 1);
        d2.set(eidx(t[0], t[2]), j, -1);
        d2.set(eidx(t[0], t[1]), j, 1);
    }
    let s1 = d1.smith_diagonal()?;
    let s2 = d2.smith_diagonal()?;
    let r1 = s1.len() as i64;
    let r2 = s2.len() as i64;
    if s1.iter().chain(s2.iter()).any(|&d| d != 1 && d != -1) {
        return Err(PolyError::TorsionDetected(format!(
            "subcomplex {omega:?} has a non-unit invariant factor"
        )));
    }
    let nv = verts.len() as i64;
    let ne = edges.len() as i64;
    let nt = tris.len() as i64;
    Ok(Betti([0, nv - r1 - 1, ne - r1 - r2, nt - r2]))
}

/// A dense integer matrix with exact elimination helpers.
#[derive(Clone, Debug)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    /// Diagonal of the Smith normal form (nonzero invariant factors, signs
    /// included). Unit pivots are preferred; when none is available the
    /// standard gcd reduction runs on checked arithmetic.
    pub fn smith_diagonal(mut self) -> Result<Vec<i64>> {
        let mut diag = Vec::new();
        let mut r0 = 0usize;
        let mut c0 = 0usize;
        while r0 < self.rows && c0 < self.cols {
            // find a pivot, preferring +-1 entries
            let mut pivot = None;
            'search: for r in r0..self.rows {
                for c in c0..self.cols {
                    let v = self.get(r, c);
                    if v == 1 || v == -1 {
                        pivot = Some((r, c));
                        break 'search;
                    }
                    if v != 0 && pivot.is_none() {
                        pivot = Some((r, c));
                    }
                }
            }
            let (pr, pc) = match pivot {
                None => break,
                Some(p) => p,
            };
            self.swap_rows(r0, pr);
            self.swap_cols(c0, pc);
            // gcd reduction until the pivot divides its row and column
            loop {
                let p = self.get(r0, c0);
                debug_assert!(p != 0);
                let mut clean = true;
                for r in r0 + 1..self.rows {
                    let v = self.get(r, c0);
                    if v != 0 {
                        let q = div_round(v, p);
                        if q != 0 {
                            self.row_axpy(r, r0, -q)?;
                        }
                        if self.get(r, c0) != 0 {
                            self.swap_rows(r0, r);
                            clean = false;
                            break;
                        }
                    }
                }
                if !clean {
                    continue;
                }
                for c in c0 + 1..self.cols {
                    let v = self.get(r0, c);
                    if v != 0 {
                        let q = div_round(v, p);
                        if q != 0 {
                            self.col_axpy(c, c0, -q)?;
                        }
                        if self.get(r0, c) != 0 {
                            self.swap_cols(c0, c);
                            clean = false;
                            break;
                        }
                    }
                }
                if clean {
                    break;
                }
            }
            diag.push(self.get(r0, c0));
            r0 += 1;
            c0 += 1;
        }
        Ok(diag)
    }

    /// Rank over the rationals by fraction-free elimination with unit-pivot
    /// preference (falls back to multiplying rows out, checked).
    pub fn rank(&self) -> usize {
        let mut mat = self.clone();
        let mut rank = 0usize;
        let mut used_rows = vec![false; mat.rows];
        for c in 0..mat.cols {
            // choose pivot row: prefer +-1
            let mut pick: Option<usize> = None;
            for r in 0..mat.rows {
                if used_rows[r] || mat.get(r, c) == 0 {
                    continue;
                }
                let v = mat.get(r, c).abs();
                if v == 1 {
                    pick = Some(r);
                    break;
                }
                if pick.is_none() {
                    pick = Some(r);
                }
            }
            let pr = match pick {
                None => continue,
                Some(r) => r,
            };
            used_rows[pr] = true;
            rank += 1;
            let pv = mat.get(pr, c);
            for r in 0..mat.rows {
                if r == pr || used_rows[r] || mat.get(r, c) == 0 {
                    continue;
                }
                let v = mat.get(r, c);
                let g = gcd(pv.unsigned_abs(), v.unsigned_abs()) as i64;
                let a = pv / g;
                let b = v / g;
                // row_r := a * row_r - b * row_pr
                for cc in 0..mat.cols {
                    let x = mat
                        .get(r, cc)
                        .checked_mul(a)
                        .and_then(|t| t.checked_sub(mat.get(pr, cc).checked_mul(b).unwrap()))
                        .expect("integer overflow in rank elimination");
                    mat.set(r, cc, x);
                }
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            let x = self.get(a, c);
            let y = self.get(b, c);
            self.set(a, c, y);
            self.set(b, c, x);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            let x = self.get(r, a);
            let y = self.get(r, b);
            self.set(r, a, y);
            self.set(r, b, x);
        }
    }

    fn row_axpy(&mut self, target: usize, source: usize, factor: i64) -> Result<()> {
        for c in 0..self.cols {
            let x = self
                .get(target, c)
                .checked_add(
                    self.get(source, c)
                        .checked_mul(factor)
                        .ok_or_else(overflow)?,
                )
                .ok_or_else(overflow)?;
            self.set(target, c, x);
        }
        Ok(())
    }

    fn col_axpy(&mut self, target: usize, source: usize, factor: i64) -> Result<()> {
        for r in 0..self.rows {
            let x = self
                .get(r, target)
                .checked_add(
                    self.get(r, source)
                        .checked_mul(factor)
                        .ok_or_else(overflow)?,
                )
                .ok_or_else(overflow)?;
            self.set(r, target, x);
        }
        Ok(())
    }
}

fn overflow() -> PolyError {
    PolyError::SizeBound("integer overflow in exact elimination".into())
}

fn div_round(a: i64, b: i64) -> i64 {
    // round-toward-zero division is fine for the gcd sweep
    a / b
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// Decomposition of the sphere complement of a full subcomplex into
/// regions, with the induced boundary cycles.
///
/// Every triangle of the nerve not fully inside `tau` belongs to exactly one
/// region; two such triangles are in the same region when they share an
/// edge that is not an edge of `K_tau`. The boundary cycle of a region is
/// the 1-chain `z_R = sum of oriented triangle boundaries` over the region,
/// which is supported on edges of `K_tau` and, over all regions, generates
/// `H_1(K_tau)`.
pub struct Regions {
    /// for each region, the sparse cycle as (edge index in the nerve's
    /// global lex edge list, coefficient)
    pub cycles: Vec<Vec<(usize, i64)>>,
}

pub fn complement_regions(nerve: &NerveComplex, tau: OmegaSubset) -> Regions {
    let tris = nerve.triangles();
    let oriented = nerve.oriented_triangles();
    let nt = tris.len();
    let inside = |t: &[usize; 3]| t.iter().all(|&x| tau.contains(x));
    // union-find over outside triangles
    let mut parent: Vec<usize> = (0..nt).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (e, &(a, b)) in nerve.edges().iter().enumerate() {
        if tau.contains(a) && tau.contains(b) {
            continue; // edge of K_tau blocks the crossing
        }
        let [t0, t1] = nerve.edge_triangles()[e];
        if !inside(&tris[t0]) && !inside(&tris[t1]) {
            let r0 = find(&mut parent, t0);
            let r1 = find(&mut parent, t1);
            if r0 != r1 {
                parent[r0] = r1;
            }
        }
    }
    // accumulate z_R per region root
    let ne = nerve.edges().len();
    let mut acc: std::collections::BTreeMap<usize, Vec<i64>> = std::collections::BTreeMap::new();
    for j in 0..nt {
        if inside(&tris[j]) {
            continue;
        }
        let root = find(&mut parent, j);
        let entry = acc.entry(root).or_insert_with(|| vec![0i64; ne]);
        let o = &oriented[j];
        for i in 0..3 {
            let a = o[i];
            let b = o[(i + 1) % 3];
            if tau.contains(a) && tau.contains(b) {
                let sign = if a < b { 1 } else { -1 };
                entry[nerve.edge_index(a, b).unwrap()] += sign;
            }
        }
    }
    let mut cycles: Vec<Vec<(usize, i64)>> = acc
        .into_values()
        .map(|dense| {
            dense
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c != 0)
                .collect()
        })
        .collect();
    cycles.sort();
    Regions { cycles }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::reference;

    #[test]
    fn fast_table_matches_matrix_route() {
        for p in [
            construct::simplex(),
            construct::cube(),
            construct::prism(5).unwrap(),
            construct::associahedron(),
        ] {
            let nerve = p.nerve();
            let table = betti_table(&nerve);
            for omega in OmegaSubset::all(p.m()) {
                let fast = table.betti(omega);
                let exact = subcomplex_betti_matrix(&nerve, omega).unwrap();
                assert_eq!(fast, exact, "omega {omega:?} on m={}", p.m());
                let gf2 = reference::subcomplex_betti_gf2(&p, omega);
                if !omega.is_empty() {
                    assert_eq!(fast.0, gf2, "gf2 route, omega {omega:?}");
                }
            }
        }
    }

    #[test]
    fn empty_and_full_subsets() {
        let p = construct::cube();
        let table = betti_table(&p.nerve());
        assert_eq!(table.betti(OmegaSubset::EMPTY).0, [1, 0, 0, 0]);
        assert_eq!(table.betti(OmegaSubset::full(6)).0, [0, 0, 0, 1]);
    }

    #[test]
    fn two_disjoint_faces_have_one_reduced_component() {
        let p = construct::cube();
        let table = betti_table(&p.nerve());
        // faces 0 and 1 are the two opposite squares
        assert_eq!(table.betti(OmegaSubset::pair(0, 1)).0, [0, 1, 0, 0]);
    }

    #[test]
    fn cube_h_ranks() {
        let p = construct::cube();
        let table = betti_table(&p.nerve());
        let ranks: Vec<i64> = (0..=9).map(|k| table.h_rank(k)).collect();
        assert_eq!(ranks, vec![1, 0, 0, 3, 0, 0, 3, 0, 0, 1]);
    }

    #[test]
    fn simplex_h_ranks() {
        let p = construct::simplex();
        let table = betti_table(&p.nerve());
        let ranks: Vec<i64> = (0..=7).map(|k| table.h_rank(k)).collect();
        assert_eq!(ranks, vec![1, 0, 0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn region_cycles_generate_h1() {
        // rank of the region cycles must match b1 for every subset
        for p in [construct::cube(), construct::associahedron()] {
            let nerve = p.nerve();
            let table = betti_table(&nerve);
            for omega in OmegaSubset::all(p.m()) {
                if omega.is_empty() {
                    continue;
                }
                let regions = complement_regions(&nerve, omega);
                let ne = nerve.edges().len();
                // stack region cycles above triangle boundaries of K_omega
                let tris: Vec<[usize; 3]> = nerve
                    .triangles()
                    .iter()
                    .copied()
                    .filter(|t| t.iter().all(|&x| omega.contains(x)))
                    .collect();
                let mut with = IntMatrix::zero(regions.cycles.len() + tris.len(), ne);
                let mut boundaries = IntMatrix::zero(tris.len(), ne);
                for (r, cyc) in regions.cycles.iter().enumerate() {
                    for &(e, c) in cyc {
                        with.set(r, e, c);
                    }
                }
                let eidx = |a: usize, b: usize| {
                    nerve.edges().binary_search(&(a.min(b), a.max(b))).unwrap()
                };
                for (j, t) in tris.iter().enumerate() {
                    for (col, val) in [
                        (eidx(t[1], t[2]), 1),
                        (eidx(t[0], t[2]), -1),
                        (eidx(t[0], t[1]), 1),
                    ] {
                        with.set(regions.cycles.len() + j, col, val);
                        boundaries.set(j, col, val);
                    }
                }
                let b1 = table.betti(omega).b(1);
                assert_eq!(
                    with.rank() as i64 - boundaries.rank() as i64,
                    b1,
                    "omega {omega:?} m={}",
                    p.m()
                );
            }
        }
    }
}
