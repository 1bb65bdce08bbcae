//! The multigraded cohomology ring of the moment-angle manifold.
//!
//! Classes live in pieces `H^{-i,2w}(Z_P) ~ H~^{|w|-i-1}(K_w)`, realized as
//! simplicial cochains on full subcomplexes of the nerve. The product is
//! computed at cochain level with shuffle signs and projected to a fixed,
//! deterministic basis per piece. Rank invariants (the H3xH3 pairing, B_k,
//! I_7, annihilators) are computed by exact integer linear algebra using
//! evaluation against the complement-region cycles of the sphere.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use rayon::prelude::*;

use crate::belts::{self, Belt};
use crate::error::{PolyError, Result};
use crate::homology::{betti_table, complement_regions, BettiTable, IntMatrix};
use crate::polytope::{NerveComplex, SimplePolytope3};
use crate::scalar::{Coeff, Echelon};
use crate::subset::OmegaSubset;

/// Reduced-cohomology degrees carried by ring elements.
pub const DEGREES: [i8; 4] = [-1, 0, 1, 2];

/// The deterministic basis of one piece `H~^d(K_w)`: representative
/// cocycles in reduced row-echelon position over the lex-ordered simplices.
pub struct SpaceBasis<S> {
    pub omega: OmegaSubset,
    pub degree: i8,
    /// d-simplices of the subcomplex, lexicographic.
    pub simplices: Vec<Vec<usize>>,
    /// the coboundary space, fully reduced
    pub cob: Echelon<S>,
    /// representative cocycles, fully reduced and coboundary-free
    pub hre: Echelon<S>,
    /// representative cocycles, tag order
    pub reps: Vec<Vec<S>>,
}

impl<S: Coeff> SpaceBasis<S> {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Express a cochain as basis coordinates; `None` when it is not a
    /// cocycle of this piece.
    pub fn express(&self, cochain: Vec<S>) -> Option<Vec<S>> {
        let reduced = self.cob.reduce(cochain);
        let (residual, coords) = self.hre.express(reduced);
        if residual.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut vec = vec![S::zero(); self.dim()];
        for (t, c) in coords {
            vec[t] = vec[t].add(&c);
        }
        Some(vec)
    }

    /// Lift a coefficient vector to a representative cocycle.
    pub fn lift(&self, coords: &[S]) -> Vec<S> {
        let n = self.simplices.len();
        let mut out = vec![S::zero(); n.max(1)];
        for (c, rep) in coords.iter().zip(self.reps.iter()) {
            for (x, y) in out.iter_mut().zip(rep.iter()) {
                *x = x.add(&c.mul(y));
            }
        }
        out
    }
}

/// All d-simplices of the full subcomplex on `omega`, lexicographic.
/// Degree -1 yields the single empty simplex of the augmented complex.
pub fn subcomplex_simplices(nerve: &NerveComplex, omega: OmegaSubset, d: i8) -> Vec<Vec<usize>> {
    match d {
        -1 => vec![vec![]],
        0 => omega.iter().map(|v| vec![v]).collect(),
        1 => nerve
            .edges()
            .iter()
            .filter(|&&(a, b)| omega.contains(a) && omega.contains(b))
            .map(|&(a, b)| vec![a, b])
            .collect(),
        2 => nerve
            .triangles()
            .iter()
            .filter(|t| t.iter().all(|&x| omega.contains(x)))
            .map(|t| t.to_vec())
            .collect(),
        _ => Vec::new(),
    }
}

/// Sign of the shuffle interleaving two sorted vertex lists: parity of the
/// number of pairs (a, b) with a in `first`, b in `second`, b < a.
pub fn shuffle_sign(first: &[usize], second: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for &a in first {
        for &b in second {
            if b < a {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A ring element: a formal sum of basis classes, keyed by (omega, degree).
#[derive(Clone, Debug, PartialEq)]
pub struct RingElement<S> {
    pub m: usize,
    pub comps: BTreeMap<(u32, i8), Vec<S>>,
}

impl<S: Coeff> RingElement<S> {
    pub fn zero(m: usize) -> Self {
        RingElement { m, comps: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Total cohomological degree when homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut deg = None;
        for &(mask, d) in self.comps.keys() {
            let this = OmegaSubset(mask).len() as i64 + d as i64 + 1;
            match deg {
                None => deg = Some(this),
                Some(x) if x == this => {}
                _ => return None,
            }
        }
        deg.map(|x| x as usize)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &rhs.comps {
            match out.comps.get_mut(k) {
                Some(existing) => {
                    for (x, y) in existing.iter_mut().zip(v.iter()) {
                        *x = x.add(y);
                    }
                }
                None => {
                    out.comps.insert(*k, v.clone());
                }
            }
        }
        out.normalize();
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = self.clone();
        for v in out.comps.values_mut() {
            for x in v.iter_mut() {
                *x = x.mul(c);
            }
        }
        out.normalize();
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&S::one().neg())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn normalize(&mut self) {
        self.comps.retain(|_, v| v.iter().any(|x| !x.is_zero()));
    }
}

/// The cohomology ring of `Z_P` over the coefficient field `S`.
pub struct CohomRing<S> {
    poly: SimplePolytope3,
    nerve: NerveComplex,
    table: BettiTable,
    bases: RefCell<HashMap<(u32, i8), Rc<SpaceBasis<S>>>>,
}

impl<S: Coeff> CohomRing<S> {
    pub fn new(poly: &SimplePolytope3) -> Self {
        let nerve = poly.nerve();
        let table = betti_table(&nerve);
        CohomRing {
            poly: poly.clone(),
            nerve,
            table,
            bases: RefCell::new(HashMap::new()),
        }
    }

    pub fn polytope(&self) -> &SimplePolytope3 {
        &self.poly
    }

    pub fn nerve(&self) -> &NerveComplex {
        &self.nerve
    }

    pub fn table(&self) -> &BettiTable {
        &self.table
    }

    /// The deterministic basis of the piece (omega, d), cached.
    pub fn basis(&self, omega: OmegaSubset, d: i8) -> Rc<SpaceBasis<S>> {
        if let Some(b) = self.bases.borrow().get(&(omega.0, d)) {
            return Rc::clone(b);
        }
        let built = Rc::new(self.build_basis(omega, d));
        self.bases
            .borrow_mut()
            .insert((omega.0, d), Rc::clone(&built));
        built
    }

    fn build_basis(&self, omega: OmegaSubset, d: i8) -> SpaceBasis<S> {
        let simp_d = subcomplex_simplices(&self.nerve, omega, d);
        if d >= 0 && simp_d.is_empty() {
            // an empty cochain space has no classes; avoid the padded
            // one-slot vectors the nonempty path uses
            return SpaceBasis {
                omega,
                degree: d,
                simplices: simp_d,
                cob: Echelon::new(),
                hre: Echelon::new(),
                reps: Vec::new(),
            };
        }
        let simp_up = subcomplex_simplices(&self.nerve, omega, d + 1);
        let simp_down = if d == -1 {
            Vec::new()
        } else {
            subcomplex_simplices(&self.nerve, omega, d - 1)
        };
        let n = simp_d.len();
        let mut cob: Echelon<S> = Echelon::new();
        for rho in &simp_down {
            let mut row = vec![S::zero(); n.max(1)];
            for (j, sigma) in simp_d.iter().enumerate() {
                if let Some(sign) = facet_sign(sigma, rho) {
                    row[j] = S::from_int(sign);
                }
            }
            cob.insert(row, None);
        }
        // kernel of the next coboundary
        let delta_rows: Vec<Vec<S>> = simp_up
            .iter()
            .map(|sigma| {
                let mut row = vec![S::zero(); n.max(1)];
                for (j, tau) in simp_d.iter().enumerate() {
                    if let Some(sign) = facet_sign(sigma, tau) {
                        row[j] = S::from_int(sign);
                    }
                }
                row
            })
            .collect();
        let kernel = kernel_basis(delta_rows, n.max(1));
        let mut hre: Echelon<S> = Echelon::new();
        let mut tag = 0usize;
        for cand in kernel {
            if hre.insert(cob.reduce(cand), Some(tag)) {
                tag += 1;
            }
        }
        let mut reps: Vec<(usize, Vec<S>)> =
            hre.tagged_rows().map(|(t, row)| (t, row.clone())).collect();
        reps.sort_by_key(|(t, _)| *t);
        let reps: Vec<Vec<S>> = reps.into_iter().map(|(_, r)| r).collect();
        // sanity against the counting route
        let expected = expected_dim(&self.table, omega, d);
        debug_assert_eq!(
            reps.len() as i64,
            expected,
            "basis dim mismatch at ({omega:?}, {d})"
        );
        SpaceBasis { omega, degree: d, simplices: simp_d, cob, hre, reps }
    }

    /// The multiplicative unit: the generator of `H~^{-1}(empty)`.
    pub fn one(&self) -> RingElement<S> {
        let mut comps = BTreeMap::new();
        comps.insert((0u32, -1i8), vec![S::one()]);
        RingElement { m: self.poly.m(), comps }
    }

    /// The class of a non-adjacent face pair; its representative is the
    /// indicator cochain of the larger face.
    pub fn omega_tilde(&self, i: usize, j: usize) -> Result<RingElement<S>> {
        if i == j || self.poly.are_adjacent(i, j) {
            return Err(PolyError::PreconditionViolated(format!(
                "faces {i},{j} are not a non-adjacent pair"
            )));
        }
        let omega = OmegaSubset::pair(i, j);
        let basis = self.basis(omega, 0);
        debug_assert_eq!(basis.dim(), 1);
        let mut comps = BTreeMap::new();
        comps.insert((omega.0, 0i8), vec![S::one()]);
        Ok(RingElement { m: self.poly.m(), comps })
    }

    /// The class of a k-belt: the generator of `H~^1` of its face set.
    pub fn belt_class(&self, belt: &Belt) -> RingElement<S> {
        let omega = belt.omega();
        let basis = self.basis(omega, 1);
        debug_assert_eq!(basis.dim(), 1);
        let mut comps = BTreeMap::new();
        comps.insert((omega.0, 1i8), vec![S::one()]);
        RingElement { m: self.poly.m(), comps }
    }

    /// The fundamental class: the generator of `H~^2` of the whole nerve.
    pub fn top_class(&self) -> RingElement<S> {
        let omega = OmegaSubset::full(self.poly.m());
        let basis = self.basis(omega, 2);
        debug_assert_eq!(basis.dim(), 1);
        let mut comps = BTreeMap::new();
        comps.insert((omega.0, 2i8), vec![S::one()]);
        RingElement { m: self.poly.m(), comps }
    }

    /// The Hochster product.
    pub fn product(&self, x: &RingElement<S>, y: &RingElement<S>) -> RingElement<S> {
        let mut out = RingElement::zero(self.poly.m());
        for (&(m1, d1), c1) in &x.comps {
            for (&(m2, d2), c2) in &y.comps {
                let o1 = OmegaSubset(m1);
                let o2 = OmegaSubset(m2);
                // unit components scale
                if d1 == -1 {
                    let scaled = component_element(self.poly.m(), m2, d2, c2).scale(&c1[0]);
                    out = out.add(&scaled);
                    continue;
                }
                if d2 == -1 {
                    let scaled = component_element(self.poly.m(), m1, d1, c1).scale(&c2[0]);
                    out = out.add(&scaled);
                    continue;
                }
                if !o1.is_disjoint(o2) {
                    continue;
                }
                let d = d1 + d2 + 1;
                if d > 2 {
                    continue;
                }
                let target_omega = o1.union(o2);
                let b1 = self.basis(o1, d1);
                let b2 = self.basis(o2, d2);
                let bt = self.basis(target_omega, d);
                if bt.dim() == 0 {
                    continue;
                }
                let alpha = b1.lift(c1);
                let beta = b2.lift(c2);
                let gamma = cochain_product(&b1, &alpha, &b2, &beta, &bt);
                let vec = bt
                    .express(gamma)
                    .expect("product of cocycles must be a cocycle");
                let piece = component_element(self.poly.m(), target_omega.0, d, &vec);
                out = out.add(&piece);
            }
        }
        out
    }

    /// Express a cochain on (omega, d) in the deterministic basis; `None`
    /// if it is not a cocycle.
    pub fn project(&self, omega: OmegaSubset, d: i8, cochain: Vec<S>) -> Option<Vec<S>> {
        self.basis(omega, d).express(cochain)
    }
}

fn component_element<S: Coeff>(m: usize, mask: u32, d: i8, coords: &[S]) -> RingElement<S> {
    let mut comps = BTreeMap::new();
    if coords.iter().any(|c| !c.is_zero()) {
        comps.insert((mask, d), coords.to_vec());
    }
    RingElement { m, comps }
}

/// The incidence sign of `rho` as a facet of `sigma`: `(-1)^i` when `rho`
/// is `sigma` minus its i-th vertex, else `None`.
fn facet_sign(sigma: &[usize], rho: &[usize]) -> Option<i64> {
    if sigma.len() != rho.len() + 1 {
        return None;
    }
    let mut missing = None;
    let mut ri = 0usize;
    for (si, &v) in sigma.iter().enumerate() {
        if ri < rho.len() && rho[ri] == v {
            ri += 1;
        } else if missing.is_none() {
            missing = Some(si);
        } else {
            return None;
        }
    }
    if ri != rho.len() {
        return None;
    }
    missing.map(|i| if i % 2 == 0 { 1 } else { -1 })
}

/// Deterministic kernel basis of the row space `rows` acting on vectors of
/// length `ncols`: reduced echelon pivots, then one vector per free column.
fn kernel_basis<S: Coeff>(rows: Vec<Vec<S>>, ncols: usize) -> Vec<Vec<S>> {
    let mut elim: Echelon<S> = Echelon::new();
    for r in rows {
        elim.insert(r, None);
    }
    let pivots: std::collections::BTreeSet<usize> =
        elim.pivot_columns().into_iter().collect();
    let mut out = Vec::new();
    for f in 0..ncols {
        if pivots.contains(&f) {
            continue;
        }
        let mut v = vec![S::zero(); ncols];
        v[f] = S::one();
        for (p, row) in elim.pivot_rows() {
            // RREF: row has 1 at p, zeros at other pivots
            v[p] = row[f].neg();
        }
        out.push(v);
    }
    out
}

/// The cochain-level shuffle product.
fn cochain_product<S: Coeff>(
    b1: &SpaceBasis<S>,
    alpha: &[S],
    b2: &SpaceBasis<S>,
    beta: &[S],
    target: &SpaceBasis<S>,
) -> Vec<S> {
    let o1 = b1.omega;
    let n = target.simplices.len();
    let mut gamma = vec![S::zero(); n.max(1)];
    let want1 = b1.degree + 1;
    let want2 = b2.degree + 1;
    for (j, sigma) in target.simplices.iter().enumerate() {
        let mut s1 = Vec::with_capacity(want1 as usize);
        let mut s2 = Vec::with_capacity(want2 as usize);
        for &v in sigma {
            if o1.contains(v) {
                s1.push(v);
            } else {
                s2.push(v);
            }
        }
        if s1.len() != want1 as usize || s2.len() != want2 as usize {
            continue;
        }
        let i1 = match b1.simplices.binary_search(&s1) {
            Ok(i) => i,
            Err(_) => continue,
        };
        let i2 = match b2.simplices.binary_search(&s2) {
            Ok(i) => i,
            Err(_) => continue,
        };
        if alpha[i1].is_zero() || beta[i2].is_zero() {
            continue;
        }
        let sign = S::from_int(shuffle_sign(&s1, &s2));
        gamma[j] = sign.mul(&alpha[i1]).mul(&beta[i2]);
    }
    gamma
}

/// Expected dimension of a piece from the counting table.
fn expected_dim(table: &BettiTable, omega: OmegaSubset, d: i8) -> i64 {
    if !(-1..=2).contains(&(d as i32)) {
        return 0;
    }
    table.betti(omega).b(d as i32)
}

// ---------------------------------------------------------------------------
// Rank invariants via integer evaluation against complement-region cycles.
// ---------------------------------------------------------------------------

/// Shared context for the integer rank computations.
pub struct RankEngine<'a> {
    pub poly: &'a SimplePolytope3,
    pub nerve: NerveComplex,
    pub table: BettiTable,
}

impl<'a> RankEngine<'a> {
    pub fn new(poly: &'a SimplePolytope3) -> Self {
        let nerve = poly.nerve();
        let table = betti_table(&nerve);
        RankEngine { poly, nerve, table }
    }

    /// Total rank of `H*(Z_P)`.
    pub fn total_rank(&self) -> i64 {
        let mut total = 2i64; // unit and fundamental class
        for mask in 1..(1u32 << self.poly.m()) {
            let o = OmegaSubset(mask);
            if o == OmegaSubset::full(self.poly.m()) {
                continue;
            }
            let b = self.table.betti(o);
            total += b.b(0) + b.b(1);
        }
        total
    }

    /// The dense region-cycle vectors of `K_tau`, over global edge indices.
    fn region_cycles_dense(&self, tau: OmegaSubset) -> Vec<Vec<i64>> {
        let regions = complement_regions(&self.nerve, tau);
        let ne = self.nerve.edges().len();
        regions
            .cycles
            .into_iter()
            .map(|sparse| {
                let mut dense = vec![0i64; ne];
                for (e, c) in sparse {
                    dense[e] = c;
                }
                dense
            })
            .collect()
    }

    /// Evaluation of the product class of `1_{b}` (the chosen generator of
    /// a pair piece, b = larger face) with the indicator of a component `C`
    /// against a region cycle: sum over edges from b into C.
    fn pair_component_eval(&self, b: usize, comp: u32, cycle: &[i64]) -> i64 {
        let mut total = 0i64;
        let mut mask = self.poly.adjacency_mask(b) & comp;
        while mask != 0 {
            let u = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            let e = self.nerve.edge_index(b, u).unwrap();
            let sign = if b < u { 1 } else { -1 };
            total += sign * cycle[e];
        }
        total
    }

    /// Connected components of the induced subgraph on `omega`, as masks.
    pub fn components_of(&self, omega: OmegaSubset) -> Vec<u32> {
        let mut remaining = omega.0;
        let mut out = Vec::new();
        while remaining != 0 {
            let start = remaining.trailing_zeros() as usize;
            let mut comp = 1u32 << start;
            loop {
                let mut grown = comp;
                let mut scan = comp;
                while scan != 0 {
                    let v = scan.trailing_zeros() as usize;
                    scan &= scan - 1;
                    grown |= self.poly.adjacency_mask(v) & omega.0;
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            remaining &= !comp;
        }
        out
    }
}

/// Report of the H3 x H3 pairing computation.
#[derive(Clone, Debug, serde::Serialize)]
pub struct A3Report {
    /// rank of the map H3 -> Hom(H3, H6)
    pub pairing_rank: i64,
    /// dim of its kernel A3
    pub a3_rank: i64,
    /// count of non-adjacent pairs lying in no 4-belt
    pub combinatorial_a3_rank: i64,
    pub n2_size: i64,
}

pub fn a3_report(engine: &RankEngine<'_>) -> A3Report {
    let pairs = engine.poly.n2_pairs();
    let ncols = pairs.len();
    let a3 = a3_kernel_rank(engine, &pairs);
    let pairing_rank = ncols as i64 - a3;
    let combinatorial = combinatorial_a3(engine.poly, &pairs);
    A3Report {
        pairing_rank,
        a3_rank: a3,
        combinatorial_a3_rank: combinatorial,
        n2_size: ncols as i64,
    }
}

fn a3_kernel_rank(engine: &RankEngine<'_>, pairs: &[(usize, usize)]) -> i64 {
    let ncols = pairs.len();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for &(a2, b2) in pairs.iter() {
        let o2 = OmegaSubset::pair(a2, b2);
        // rows are indexed by (t, tau, region); columns by s
        let mut by_tau: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (s, &(a1, b1)) in pairs.iter().enumerate() {
            let o1 = OmegaSubset::pair(a1, b1);
            if !o1.is_disjoint(o2) {
                continue;
            }
            let tau = o1.union(o2);
            if engine.table.betti(tau).b(1) > 0 {
                by_tau.entry(tau.0).or_default().push(s);
            }
        }
        for (tau_mask, ss) in by_tau {
            let tau = OmegaSubset(tau_mask);
            for cycle in engine.region_cycles_dense(tau) {
                let mut row = vec![0i64; ncols];
                let mut nonzero = false;
                for &s in &ss {
                    let (_, b1) = pairs[s];
                    if let Some(e) = engine.nerve.edge_index(b1, b2) {
                        let sign = if b1 < b2 { 1 } else { -1 };
                        row[s] = sign * cycle[e];
                        nonzero |= row[s] != 0;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    let mut mat = IntMatrix::zero(rows.len(), ncols);
    for (r, row) in rows.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            mat.set(r, c, v);
        }
    }
    ncols as i64 - mat.rank() as i64
}

fn combinatorial_a3(poly: &SimplePolytope3, pairs: &[(usize, usize)]) -> i64 {
    let four_belts = belts::enumerate_belts(poly, 4);
    pairs
        .iter()
        .filter(|&&(a, b)| {
            !four_belts
                .iter()
                .any(|belt| belt.contains(a) && belt.contains(b))
        })
        .count() as i64
}

/// rk B_k: the number of k-belts, verified against the Hochster pieces.
pub fn bk_rank(engine: &RankEngine<'_>, k: usize) -> i64 {
    let belts = belts::enumerate_belts(engine.poly, k);
    let mut omegas: Vec<u32> = Vec::with_capacity(belts.len());
    for b in &belts {
        let omega = b.omega();
        debug_assert_eq!(engine.table.betti(omega).b(1), 1);
        omegas.push(omega.0);
    }
    omegas.sort_unstable();
    omegas.dedup();
    debug_assert_eq!(omegas.len(), belts.len());
    belts.len() as i64
}

/// Report of the `H3 (x) H4 -> H7` image rank over Q and over Z2.
#[derive(Clone, Debug, serde::Serialize)]
pub struct I7Report {
    pub rank_q: i64,
    pub rank_f2: i64,
}

pub fn i7_report(engine: &RankEngine<'_>) -> I7Report {
    let m = engine.poly.m();
    let mut rank_q = 0i64;
    let mut rank_f2 = 0i64;
    for mask in 1u32..(1u32 << m) {
        if mask.count_ones() != 5 {
            continue;
        }
        let tau = OmegaSubset(mask);
        let b1 = engine.table.betti(tau).b(1);
        if b1 == 0 {
            continue;
        }
        let cycles = engine.region_cycles_dense(tau);
        // generators: for each non-adjacent pair inside tau, the component
        // indicators of the remaining triple
        let mut gen_rows: Vec<Vec<i64>> = Vec::new();
        let members: Vec<usize> = tau.iter().collect();
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                let (a, b) = (members[i], members[j]);
                if engine.poly.are_adjacent(a, b) {
                    continue;
                }
                let rest = tau.remove(a).remove(b);
                for comp in engine.components_of(rest) {
                    let row: Vec<i64> = cycles
                        .iter()
                        .map(|cycle| engine.pair_component_eval(b, comp, cycle))
                        .collect();
                    if row.iter().any(|&x| x != 0) {
                        gen_rows.push(row);
                    }
                }
            }
        }
        if gen_rows.is_empty() {
            continue;
        }
        let mut mat = IntMatrix::zero(gen_rows.len(), cycles.len());
        for (r, row) in gen_rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                mat.set(r, c, v);
            }
        }
        rank_q += mat.rank() as i64;
        rank_f2 += f2_rank_rows(&gen_rows);
    }
    I7Report { rank_q, rank_f2 }
}

fn f2_rank_rows(rows: &[Vec<i64>]) -> i64 {
    // columns fit in u64 words for the desk-scale complexes
    let ncols = rows.first().map_or(0, Vec::len);
    debug_assert!(ncols <= 64);
    let mut bitrows: Vec<u64> = rows
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, &v)| v.rem_euclid(2) == 1)
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    let mut rank = 0i64;
    for col in 0..ncols {
        let bit = 1u64 << col;
        let pivot = (rank as usize..bitrows.len()).find(|&r| bitrows[r] & bit != 0);
        if let Some(p) = pivot {
            bitrows.swap(rank as usize, p);
            let prow = bitrows[rank as usize];
            for (r, row) in bitrows.iter_mut().enumerate() {
                if r != rank as usize && *row & bit != 0 {
                    *row ^= prow;
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Dimension of the annihilator of a homogeneous degree-3 element given by
/// integer coefficients on non-adjacent pairs.
pub fn annihilator_dim(engine: &RankEngine<'_>, support: &[(OmegaSubset, i64)]) -> Result<i64> {
    let supp: Vec<(OmegaSubset, i64)> =
        support.iter().copied().filter(|&(_, r)| r != 0).collect();
    if supp.is_empty() {
        return Err(PolyError::ZeroElement);
    }
    for &(omega, _) in &supp {
        if omega.len() != 2 {
            return Err(PolyError::PreconditionViolated(
                "annihilator argument must be a combination of pair classes".into(),
            ));
        }
        let mut it = omega.iter();
        let (a, b) = (it.next().unwrap(), it.next().unwrap());
        if engine.poly.are_adjacent(a, b) {
            return Err(PolyError::PreconditionViolated(format!(
                "faces {a},{b} are adjacent"
            )));
        }
    }
    let m = engine.poly.m();

    // Sparse rows over columns keyed by (source subset, component index).
    // Row (tau, region): entries r_w * eval(gen) for every support pair w
    // inside tau whose complement piece is the column's subset.
    let mut col_index: HashMap<(u32, u32), usize> = HashMap::new();
    let mut rows: Vec<Vec<(usize, i64)>> = Vec::new();

    // candidate targets: subsets containing at least one support pair and
    // carrying first cohomology; enumerated as pair-union supersets
    let mut tau_masks: Vec<u32> = Vec::new();
    {
        let mut seen = std::collections::HashSet::new();
        for &(w, _) in &supp {
            for sigma in w.complement(m).subsets() {
                let tau = w.union(sigma);
                if tau.len() > 2 && engine.table.betti(tau).b(1) != 0 && seen.insert(tau.0) {
                    tau_masks.push(tau.0);
                }
            }
        }
        tau_masks.sort_unstable();
    }
    for mask in tau_masks {
        let tau = OmegaSubset(mask);
        let relevant: Vec<(OmegaSubset, i64)> = supp
            .iter()
            .copied()
            .filter(|&(w, _)| w.is_subset_of(tau) && tau.len() > w.len())
            .collect();
        if relevant.is_empty() {
            continue;
        }
        let cycles = engine.region_cycles_dense(tau);
        for cycle in &cycles {
            let mut row: Vec<(usize, i64)> = Vec::new();
            for &(w, r) in &relevant {
                let omega2 = OmegaSubset(tau.0 & !w.0);
                let comps = engine.components_of(omega2);
                if comps.len() < 2 {
                    // the source piece H~0(K_omega2) is zero
                    continue;
                }
                let b = w.iter().max().unwrap();
                for comp in comps {
                    let val = engine.pair_component_eval(b, comp, cycle);
                    if val != 0 {
                        let next = col_index.len();
                        let col = *col_index.entry((omega2.0, comp)).or_insert(next);
                        row.push((col, r * val));
                    }
                }
            }
            if !row.is_empty() {
                row.sort_by_key(|&(c, _)| c);
                // merge duplicate columns
                let mut merged: Vec<(usize, i64)> = Vec::with_capacity(row.len());
                for (c, v) in row {
                    if let Some(last) = merged.last_mut() {
                        if last.0 == c {
                            last.1 += v;
                            continue;
                        }
                    }
                    merged.push((c, v));
                }
                merged.retain(|&(_, v)| v != 0);
                if !merged.is_empty() {
                    rows.push(merged);
                }
            }
        }
    }

    let rank = sparse_rank(&rows, col_index.len());
    // unit source (1 -> x) and the Poincare-duality piece each add one
    let mult_rank = rank + 2;
    Ok(engine.total_rank() - mult_rank)
}

/// Annihilator dimensions of every pair class at once.
///
/// For a single pair class the multiplication matrix is block-diagonal over
/// the target subsets, so the scan can run with the target in the outer
/// loop: each subset's region cycles are computed once and shared by every
/// pair inside it.
pub fn annihilator_multiset(engine: &RankEngine<'_>) -> Vec<((usize, usize), i64)> {
    let m = engine.poly.m();
    let pairs = engine.poly.n2_pairs();
    let total = engine.total_rank();
    let mask_limit = 1u64 << m;
    // parallel over chunks of the subset range, accumulating per-pair ranks
    let chunk = 1u64 << 12;
    let starts: Vec<u64> = (0..mask_limit).step_by(chunk as usize).collect();
    let partials: Vec<Vec<i64>> = starts
        .par_iter()
        .map(|&start| {
            let mut acc = vec![0i64; pairs.len()];
            for mask in start..(start + chunk).min(mask_limit) {
                let tau = OmegaSubset(mask as u32);
                if tau.len() < 3 || engine.table.betti(tau).b(1) == 0 {
                    continue;
                }
                let cycles = engine.region_cycles_dense(tau);
                for (pi, &(a, b)) in pairs.iter().enumerate() {
                    let w = OmegaSubset::pair(a, b);
                    if !w.is_subset_of(tau) {
                        continue;
                    }
                    let omega2 = OmegaSubset(tau.0 & !w.0);
                    if omega2.is_empty() || engine.poly.adjacency_mask(b) & omega2.0 == 0 {
                        continue;
                    }
                    let comps = engine.components_of(omega2);
                    if comps.len() < 2 {
                        continue;
                    }
                    let mut mat = IntMatrix::zero(comps.len(), cycles.len());
                    let mut nonzero = false;
                    for (r, &comp) in comps.iter().enumerate() {
                        for (c, cycle) in cycles.iter().enumerate() {
                            let v = engine.pair_component_eval(b, comp, cycle);
                            if v != 0 {
                                mat.set(r, c, v);
                                nonzero = true;
                            }
                        }
                    }
                    if nonzero {
                        acc[pi] += mat.rank() as i64;
                    }
                }
            }
            acc
        })
        .collect();
    let mut ranks = vec![0i64; pairs.len()];
    for part in partials {
        for (r, v) in ranks.iter_mut().zip(part) {
            *r += v;
        }
    }
    pairs
        .iter()
        .zip(ranks)
        .map(|(&p, r)| (p, total - (r + 2)))
        .collect()
}

/// Divisibility of a belt-class combination by a pair class, decided two
/// ways: the combinatorial support test and explicit solvability of
/// `x = w~ * z` over the coefficient field.
#[derive(Clone, Debug, serde::Serialize)]
pub struct DividesReport {
    pub combinatorial: bool,
    pub algebraic: bool,
}

pub fn divides_report<S: Coeff>(
    ring: &CohomRing<S>,
    combo: &[(Belt, i64)],
    w: (usize, usize),
) -> Result<DividesReport> {
    let poly = ring.polytope();
    if w.0 == w.1 || poly.are_adjacent(w.0, w.1) {
        return Err(PolyError::PreconditionViolated(format!(
            "({}, {}) is not a non-adjacent pair",
            w.0, w.1
        )));
    }
    let supp: Vec<(&Belt, i64)> = combo
        .iter()
        .filter(|&&(_, c)| c != 0)
        .map(|(b, c)| (b, *c))
        .collect();
    if supp.is_empty() {
        return Err(PolyError::ZeroElement);
    }
    let combinatorial = supp
        .iter()
        .all(|(b, _)| b.contains(w.0) && b.contains(w.1));

    // solvability piece by piece: every supported tau needs omega inside it
    // and the coefficient in the image of multiplication by the pair class
    let womega = OmegaSubset::pair(w.0, w.1);
    let wclass = ring.omega_tilde(w.0, w.1)?;
    let mut algebraic = true;
    for (belt, coeff) in &supp {
        let tau = belt.omega();
        if !womega.is_subset_of(tau) {
            algebraic = false;
            break;
        }
        let target = ring.basis(tau, 1);
        let source = ring.basis(OmegaSubset(tau.0 & !womega.0), 0);
        // images of the source basis inside the target piece
        let mut span: Echelon<S> = Echelon::new();
        for t in 0..source.dim() {
            let mut coords = vec![S::zero(); source.dim()];
            coords[t] = S::one();
            let y = component_element(poly.m(), tau.0 & !womega.0, 0, &coords);
            let img = ring.product(&wclass, &y);
            let mut vec = vec![S::zero(); target.dim()];
            if let Some(v) = img.comps.get(&(tau.0, 1)) {
                vec.clone_from_slice(v);
            }
            span.insert(vec, None);
        }
        // x_tau = coeff * belt class (the belt class is basis element 0)
        let mut xvec = vec![S::zero(); target.dim()];
        xvec[0] = S::from_int(*coeff);
        let residual = span.reduce(xvec);
        if residual.iter().any(|x| !x.is_zero()) {
            algebraic = false;
            break;
        }
    }
    Ok(DividesReport { combinatorial, algebraic })
}

/// The spec-level divisibility operation on a ring element: the element
/// must be a combination of belt classes of one length.
pub fn divides<S: Coeff>(
    ring: &CohomRing<S>,
    x: &RingElement<S>,
    w: (usize, usize),
) -> Result<bool> {
    let poly = ring.polytope();
    let mut combo: Vec<(Belt, i64)> = Vec::new();
    let mut k_seen: Option<usize> = None;
    for (&(mask, d), coords) in &x.comps {
        if d != 1 {
            return Err(PolyError::NotInBeltSpan);
        }
        let omega = OmegaSubset(mask);
        match k_seen {
            None => k_seen = Some(omega.len()),
            Some(k) if k == omega.len() => {}
            _ => return Err(PolyError::NotInBeltSpan),
        }
        let belt = belts::enumerate_belts(poly, omega.len())
            .into_iter()
            .find(|b| b.omega() == omega)
            .ok_or(PolyError::NotInBeltSpan)?;
        // the piece is one-dimensional and solvability is invariant under
        // scaling, so only the support pattern matters
        let as_int = i64::from(!coords[0].is_zero());
        combo.push((belt, as_int));
    }
    let report = divides_report(ring, &combo, w)?;
    debug_assert_eq!(report.combinatorial, report.algebraic);
    Ok(report.combinatorial)
}

/// Rank of a sparse integer matrix by connected-component decomposition.
fn sparse_rank(rows: &[Vec<(usize, i64)>], ncols: usize) -> i64 {
    if rows.is_empty() || ncols == 0 {
        return 0;
    }
    // union-find over columns through shared rows
    let mut parent: Vec<usize> = (0..ncols).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for row in rows {
        let first = find(&mut parent, row[0].0);
        for &(c, _) in &row[1..] {
            let r = find(&mut parent, c);
            if r != first {
                parent[r] = first;
            }
        }
    }
    // group rows and columns per component
    let mut comp_cols: HashMap<usize, Vec<usize>> = HashMap::new();
    for c in 0..ncols {
        let root = find(&mut parent, c);
        comp_cols.entry(root).or_default().push(c);
    }
    let mut comp_rows: HashMap<usize, Vec<&Vec<(usize, i64)>>> = HashMap::new();
    for row in rows {
        let root = find(&mut parent, row[0].0);
        comp_rows.entry(root).or_default().push(row);
    }
    let mut total = 0i64;
    for (root, cols) in comp_cols {
        let rws = match comp_rows.get(&root) {
            None => continue,
            Some(r) => r,
        };
        let col_pos: HashMap<usize, usize> =
            cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut mat = IntMatrix::zero(rws.len(), cols.len());
        for (r, row) in rws.iter().enumerate() {
            for &(c, v) in row.iter() {
                mat.set(r, col_pos[&c], v);
            }
        }
        total += mat.rank() as i64;
    }
    total
}
