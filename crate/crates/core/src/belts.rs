//! k-belts: enumeration, triviality, polytope classification and the
//! separable circuit conditions.

use serde::Serialize;

use crate::polytope::SimplePolytope3;
use crate::subset::OmegaSubset;

/// A k-belt: a cyclic face sequence in which faces are adjacent exactly when
/// consecutive and no three members share a vertex. Stored canonically:
/// minimal rotation, direction chosen so the second entry is smaller than
/// the last.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Belt {
    pub faces: Vec<usize>,
}

impl Belt {
    /// Canonical representative of a cyclic sequence up to rotation and
    /// reflection.
    pub fn canonicalize(cycle: Vec<usize>) -> Belt {
        let k = cycle.len();
        let min_pos = (0..k).min_by_key(|&i| cycle[i]).unwrap();
        let mut fwd = Vec::with_capacity(k);
        let mut bwd = Vec::with_capacity(k);
        for i in 0..k {
            fwd.push(cycle[(min_pos + i) % k]);
            bwd.push(cycle[(min_pos + k - i) % k]);
        }
        if fwd <= bwd {
            Belt { faces: fwd }
        } else {
            Belt { faces: bwd }
        }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn omega(&self) -> OmegaSubset {
        OmegaSubset::from_iter(self.faces.iter().copied())
    }

    pub fn contains(&self, f: usize) -> bool {
        self.faces.contains(&f)
    }

    /// The faces this belt surrounds: faces whose neighbor ring is exactly
    /// this belt. A belt is trivial iff this set is nonempty.
    pub fn surrounded_faces(&self, p: &SimplePolytope3) -> Vec<usize> {
        let belt_mask = self.omega().0;
        let mut mask = u32::MAX;
        for &f in &self.faces {
            mask &= p.adjacency_mask(f);
        }
        OmegaSubset(mask & OmegaSubset::full(p.m()).0)
            .iter()
            .filter(|&f| !self.contains(f) && p.adjacency_mask(f) == belt_mask)
            .collect()
    }

    pub fn is_trivial(&self, p: &SimplePolytope3) -> bool {
        !self.surrounded_faces(p).is_empty()
    }

    /// The two arcs of the belt strictly between faces `a` and `b`
    /// (which must be non-consecutive members).
    pub fn arcs_between(&self, a: usize, b: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let k = self.len();
        let pa = self.faces.iter().position(|&f| f == a)?;
        let pb = self.faces.iter().position(|&f| f == b)?;
        if pa == pb {
            return None;
        }
        let mut arc1 = Vec::new();
        let mut i = (pa + 1) % k;
        while i != pb {
            arc1.push(self.faces[i]);
            i = (i + 1) % k;
        }
        let mut arc2 = Vec::new();
        let mut i = (pb + 1) % k;
        while i != pa {
            arc2.push(self.faces[i]);
            i = (i + 1) % k;
        }
        Some((arc1, arc2))
    }
}

/// Depth-first enumeration of all k-belts, canonical order.
///
/// Paths are extended in the face-adjacency graph anchored at their minimal
/// face, rejecting chords and shared vertices on the fly.
pub fn enumerate_belts(p: &SimplePolytope3, k: usize) -> Vec<Belt> {
    let mut out = Vec::new();
    if k < 3 || k > p.m() {
        return out;
    }
    for anchor in 0..p.m() {
        let mut path = vec![anchor];
        extend_belt(p, k, anchor, &mut path, &mut |cycle| {
            out.push(Belt::canonicalize(cycle.to_vec()));
        });
    }
    out.sort();
    out.dedup();
    out
}

/// All belts (any length) through every face of `through`, avoiding every
/// face of `forbidden`, with optional length cap.
pub fn belts_through(
    p: &SimplePolytope3,
    through: &[usize],
    forbidden: &[usize],
    max_len: Option<usize>,
) -> Vec<Belt> {
    let cap = max_len.unwrap_or(p.m());
    let mut out: Vec<Belt> = Vec::new();
    if let Some(&anchor) = through.first() {
        let rest: Vec<usize> = through[1..].to_vec();
        let mut path = vec![anchor];
        let mut stop = false;
        dfs_cycles(p, anchor, forbidden, cap, &mut path, &mut |belt| {
            if rest.iter().all(|&f| belt.contains(f)) {
                out.push(belt.clone());
            }
            false
        }, &mut stop);
    } else {
        for k in 3..=cap {
            for belt in enumerate_belts(p, k) {
                if forbidden.iter().all(|f| !belt.contains(*f)) {
                    out.push(belt);
                }
            }
        }
    }
    out.sort_by(|a, b| (a.len(), &a.faces).cmp(&(b.len(), &b.faces)));
    out.dedup();
    out
}

fn extend_belt(
    p: &SimplePolytope3,
    k: usize,
    anchor: usize,
    path: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    let last = *path.last().unwrap();
    if path.len() == k {
        if p.are_adjacent(last, anchor) && closes_belt(p, path) {
            // avoid double counting (each cycle found twice, once per
            // direction): require second entry < last entry
            if path[1] < path[k - 1] {
                emit(path);
            }
        }
        return;
    }
    for &next in p.neighbors(last) {
        if next <= anchor || path.contains(&next) {
            continue;
        }
        // chord rejection: next must not be adjacent to any interior member
        // (anchor allowed only when closing)
        let bad_chord = path[..path.len() - 1]
            .iter()
            .skip(1)
            .any(|&f| p.are_adjacent(f, next));
        if bad_chord {
            continue;
        }
        if path.len() + 1 < k && p.are_adjacent(next, anchor) && path.len() >= 2 {
            // adjacency to the anchor is only allowed for the closing face
            continue;
        }
        // vertex sharing: no vertex may see three path members; checking
        // vertices of the new face against pairs in the path
        if shares_vertex(p, path, next) {
            continue;
        }
        path.push(next);
        extend_belt(p, k, anchor, path, emit);
        path.pop();
    }
}

fn shares_vertex(p: &SimplePolytope3, path: &[usize], next: usize) -> bool {
    // a vertex shared by `next` and two path members
    for i in 0..path.len() {
        for j in i + 1..path.len() {
            if p.is_vertex([path[i], path[j], next]) {
                return true;
            }
        }
    }
    false
}

fn closes_belt(p: &SimplePolytope3, cycle: &[usize]) -> bool {
    let k = cycle.len();
    // the DFS maintains the path-internal conditions; verify the anchor
    // adjacencies and anchor-involving vertex triples
    for (i, &f) in cycle.iter().enumerate().skip(2) {
        if i != k - 1 && p.are_adjacent(cycle[0], f) {
            return false;
        }
    }
    for i in 1..k {
        for j in i + 1..k {
            if p.is_vertex([cycle[0], cycle[i], cycle[j]]) {
                return false;
            }
        }
    }
    true
}

/// The classification of the spec's taxonomy; the finest matching class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PolytopeClass {
    NotFlag,
    FlagOnly,
    Pogorelov,
    AlmostPogorelov,
    IdealAlmostPogorelov,
}

/// Classification evidence: witnessing belts or incidence data.
#[derive(Clone, Debug, Serialize)]
pub struct ClassEvidence {
    pub class: PolytopeClass,
    /// A 3-belt for NotFlag, a nontrivial 4-belt for FlagOnly.
    pub witness_belt: Option<Belt>,
    /// For (ideal) almost Pogorelov: the number of 4-belts.
    pub four_belt_count: usize,
    /// For ideal: per-vertex quadrangle incidence counts.
    pub vertex_quad_counts: Option<Vec<usize>>,
}

/// Is the polytope flag (not the simplex, no 3-belts)?
pub fn is_flag(p: &SimplePolytope3) -> bool {
    p.m() > 4 && enumerate_belts(p, 3).is_empty()
}

/// Pogorelov: flag with no 4-belts.
pub fn is_pogorelov(p: &SimplePolytope3) -> bool {
    is_flag(p) && enumerate_belts(p, 4).is_empty()
}

/// Almost Pogorelov in the inclusive sense: flag, and every 4-belt
/// surrounds a face. Vacuously true for Pogorelov polytopes.
pub fn is_almost_pogorelov(p: &SimplePolytope3) -> bool {
    is_flag(p) && enumerate_belts(p, 4).iter().all(|b| b.is_trivial(p))
}

/// Ideal almost Pogorelov: almost Pogorelov and every vertex lies on
/// exactly one quadrangle.
pub fn is_ideal_almost_pogorelov(p: &SimplePolytope3) -> bool {
    is_almost_pogorelov(p) && vertex_quad_counts(p).iter().all(|&c| c == 1)
}

fn vertex_quad_counts(p: &SimplePolytope3) -> Vec<usize> {
    p.vertices()
        .iter()
        .map(|v| v.iter().filter(|&&f| p.degree(f) == 4).count())
        .collect()
}

/// The finest matching class, with evidence.
pub fn classify(p: &SimplePolytope3) -> ClassEvidence {
    let three = enumerate_belts(p, 3);
    if p.m() == 4 || !three.is_empty() {
        return ClassEvidence {
            class: PolytopeClass::NotFlag,
            witness_belt: three.first().cloned(),
            four_belt_count: 0,
            vertex_quad_counts: None,
        };
    }
    let four = enumerate_belts(p, 4);
    if four.is_empty() {
        return ClassEvidence {
            class: PolytopeClass::Pogorelov,
            witness_belt: None,
            four_belt_count: 0,
            vertex_quad_counts: None,
        };
    }
    if let Some(bad) = four.iter().find(|b| !b.is_trivial(p)) {
        return ClassEvidence {
            class: PolytopeClass::FlagOnly,
            witness_belt: Some(bad.clone()),
            four_belt_count: four.len(),
            vertex_quad_counts: None,
        };
    }
    let vq = vertex_quad_counts(p);
    let ideal = vq.iter().all(|&c| c == 1);
    ClassEvidence {
        class: if ideal {
            PolytopeClass::IdealAlmostPogorelov
        } else {
            PolytopeClass::AlmostPogorelov
        },
        witness_belt: None,
        four_belt_count: four.len(),
        vertex_quad_counts: Some(vq),
    }
}

/// Variants of the separable circuit condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SccVariant {
    Flag,
    Pogorelov,
    AlmostPogorelov,
}

/// Outcome of an SCC check: either the condition holds, or the first
/// violating triple is returned.
#[derive(Clone, Debug, Serialize)]
pub struct SccReport {
    pub holds: bool,
    pub violating_triple: Option<(usize, usize, usize)>,
}

/// Does face `f` intersect (equal or share an edge with) any member of the
/// list? For simple 3-polytopes nonempty intersection equals adjacency.
fn intersects_any(p: &SimplePolytope3, f: usize, faces: &[usize]) -> bool {
    faces.iter().any(|&g| g == f || p.are_adjacent(f, g))
}

/// Is there an l-belt through `fi`, `fj`, avoiding `fk`, such that `fk`
/// misses at least one of the two arcs of the belt between `fi` and `fj`?
fn has_separating_belt(p: &SimplePolytope3, fi: usize, fj: usize, fk: usize) -> bool {
    exists_belt_through_pair(p, fi, fj, &mut |belt| {
        if belt.contains(fk) {
            return false;
        }
        let (arc1, arc2) = belt.arcs_between(fi, fj).expect("members are non-consecutive");
        !intersects_any(p, fk, &arc1) || !intersects_any(p, fk, &arc2)
    })
}

/// Is there an l-belt through `fi`, `fj` avoiding `fk` (no arc condition)?
fn has_avoiding_belt(p: &SimplePolytope3, fi: usize, fj: usize, fk: usize) -> bool {
    exists_belt_through_pair(p, fi, fj, &mut |belt| !belt.contains(fk))
}

/// Search all belts through the non-adjacent pair (fi, fj), applying the
/// predicate until one matches. Exhaustive: every belt through the pair is
/// eventually generated.
pub fn exists_belt_through_pair(
    p: &SimplePolytope3,
    fi: usize,
    fj: usize,
    pred: &mut impl FnMut(&Belt) -> bool,
) -> bool {
    let mut found = false;
    for_each_belt_through_pair(p, fi, fj, &mut |belt| {
        if pred(belt) {
            found = true;
            true // stop
        } else {
            false
        }
    });
    found
}

/// Enumerate belts through a fixed non-adjacent pair by DFS on paths from
/// `fi` through `fj` and back, maintaining the belt axioms. The callback
/// returns `true` to stop early.
pub fn for_each_belt_through_pair(
    p: &SimplePolytope3,
    fi: usize,
    fj: usize,
    visit: &mut impl FnMut(&Belt) -> bool,
) {
    let mut path = vec![fi];
    let mut stop = false;
    dfs_cycles(p, fi, &[], p.m(), &mut path, &mut |belt| {
        belt.contains(fj) && visit(belt)
    }, &mut stop);
}

/// DFS over all belts containing `anchor`, each visited exactly once, in a
/// deterministic order. Faces in `forbidden` are never used. The callback
/// returns `true` to stop the whole search.
fn dfs_cycles(
    p: &SimplePolytope3,
    anchor: usize,
    forbidden: &[usize],
    cap: usize,
    path: &mut Vec<usize>,
    visit: &mut impl FnMut(&Belt) -> bool,
    stop: &mut bool,
) {
    if *stop || path.len() >= cap.min(p.m()) {
        return;
    }
    let last = *path.last().unwrap();
    for &next in p.neighbors(last) {
        if next == anchor || path.contains(&next) || forbidden.contains(&next) {
            continue;
        }
        let bad_chord = path[..path.len() - 1]
            .iter()
            .skip(1)
            .any(|&f| p.are_adjacent(f, next));
        if bad_chord || shares_vertex(p, path, next) {
            continue;
        }
        let closing = p.are_adjacent(next, anchor);
        path.push(next);
        if closing && path.len() >= 3 {
            // candidate cycle; visit once per direction
            if closes_belt(p, path) && path[1] < path[path.len() - 1] {
                let belt = Belt::canonicalize(path.clone());
                if visit(&belt) {
                    *stop = true;
                    path.pop();
                    return;
                }
            }
        }
        // an interior face adjacent to the anchor would be a chord, so a
        // closing face never extends further (except the very first step,
        // where anchor adjacency is the consecutive one)
        if !closing || path.len() == 2 {
            dfs_cycles(p, anchor, forbidden, cap, path, visit, stop);
        }
        path.pop();
        if *stop {
            return;
        }
    }
}

/// Check one separable circuit condition on all qualifying face triples.
pub fn check_scc(p: &SimplePolytope3, variant: SccVariant) -> SccReport {
    for (fi, fj) in p.n2_pairs() {
        for fk in 0..p.m() {
            if fk == fi || fk == fj {
                continue;
            }
            let ok = match variant {
                SccVariant::Flag => has_avoiding_belt(p, fi, fj, fk),
                SccVariant::Pogorelov => has_separating_belt(p, fi, fj, fk),
                SccVariant::AlmostPogorelov => {
                    let lhs = has_separating_belt(p, fi, fj, fk);
                    let rhs = !(p.degree(fi) == 4 && p.are_adjacent(fk, fi))
                        && !(p.degree(fj) == 4 && p.are_adjacent(fk, fj));
                    lhs == rhs
                }
            };
            if !ok {
                return SccReport {
                    holds: false,
                    violating_triple: Some((fi, fj, fk)),
                };
            }
        }
    }
    SccReport { holds: true, violating_triple: None }
}

/// Goodness of `omega_prime = {s,t}` for `omega = {p,q}`: there is a belt
/// through F_s, F_t such that F_p or F_q avoids the belt and misses one of
/// its two arcs between F_s and F_t.
pub fn is_good_pair(
    poly: &SimplePolytope3,
    omega_prime: (usize, usize),
    omega: (usize, usize),
) -> bool {
    let (s, t) = omega_prime;
    let (p, q) = omega;
    exists_belt_through_pair(poly, s, t, &mut |belt| {
        for f in [p, q] {
            if belt.contains(f) {
                continue;
            }
            let (arc1, arc2) = belt.arcs_between(s, t).expect("pair in belt");
            if !intersects_any(poly, f, &arc1) || !intersects_any(poly, f, &arc2) {
                return true;
            }
        }
        false
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::reference;

    #[test]
    fn cube_has_three_trivial_4belts() {
        let cube = construct::cube();
        let belts = enumerate_belts(&cube, 4);
        assert_eq!(belts.len(), 3);
        assert!(belts.iter().all(|b| b.is_trivial(&cube)));
        assert_eq!(belts, reference::belts_brute_force(&cube, 4));
    }

    #[test]
    fn tetrahedron_has_no_3belts() {
        assert!(enumerate_belts(&construct::simplex(), 3).is_empty());
    }

    #[test]
    fn triangular_prism_has_one_3belt() {
        let p = construct::prism(3).unwrap();
        let belts = enumerate_belts(&p, 3);
        assert_eq!(belts.len(), 1);
        assert_eq!(belts[0].faces, vec![2, 3, 4]);
        assert_eq!(belts, reference::belts_brute_force(&p, 3));
    }

    #[test]
    fn enumeration_agrees_with_brute_force() {
        for p in [
            construct::associahedron(),
            construct::p8(),
            construct::prism(5).unwrap(),
            construct::prism(6).unwrap(),
        ] {
            for k in 3..=5 {
                assert_eq!(
                    enumerate_belts(&p, k),
                    reference::belts_brute_force(&p, k),
                    "belts of length {k} differ on m={}",
                    p.m()
                );
            }
        }
    }

    #[test]
    fn classification_of_named_polytopes() {
        assert_eq!(classify(&construct::simplex()).class, PolytopeClass::NotFlag);
        assert_eq!(classify(&construct::prism(3).unwrap()).class, PolytopeClass::NotFlag);
        assert_eq!(classify(&construct::cube()).class, PolytopeClass::AlmostPogorelov);
        assert_eq!(classify(&construct::prism(5).unwrap()).class, PolytopeClass::AlmostPogorelov);
        assert_eq!(classify(&construct::prism(6).unwrap()).class, PolytopeClass::FlagOnly);
        assert_eq!(classify(&construct::associahedron()).class, PolytopeClass::AlmostPogorelov);
        assert_eq!(classify(&construct::p8()).class, PolytopeClass::FlagOnly);
        assert_eq!(classify(&construct::dodecahedron()).class, PolytopeClass::Pogorelov);
        assert_eq!(
            classify(&construct::permutohedron()).class,
            PolytopeClass::IdealAlmostPogorelov
        );
    }

    #[test]
    fn scc_examples() {
        assert!(check_scc(&construct::dodecahedron(), SccVariant::Pogorelov).holds);
        assert!(check_scc(&construct::permutohedron(), SccVariant::AlmostPogorelov).holds);
        assert!(check_scc(&construct::p8(), SccVariant::AlmostPogorelov).holds);
    }

    #[test]
    fn belts_through_cube_opposite_pair() {
        let cube = construct::cube();
        let through = belts_through(&cube, &[0, 1], &[], None);
        assert_eq!(through.len(), 2);
    }

    #[test]
    fn belts_through_pe3_opposite_pair() {
        // the opposite pair of a 4-belt: the belt itself is found
        let pe3 = construct::permutohedron();
        let belt = enumerate_belts(&pe3, 4)
            .into_iter()
            .next()
            .expect("Pe3 has 4-belts");
        let opposite = [belt.faces[0], belt.faces[2]];
        assert!(!pe3.are_adjacent(opposite[0], opposite[1]));
        let found = belts_through(&pe3, &opposite, &[], Some(5));
        assert!(found.contains(&belt));
    }

    #[test]
    fn goodness_examples() {
        let pe3 = construct::permutohedron();
        // quadrangle pair: any other element is good for it
        let quads: Vec<usize> = (0..pe3.m()).filter(|&f| pe3.degree(f) == 4).collect();
        let mut quad_pair = None;
        'outer: for (i, &a) in quads.iter().enumerate() {
            for &b in &quads[i + 1..] {
                if !pe3.are_adjacent(a, b) {
                    quad_pair = Some((a, b));
                    break 'outer;
                }
            }
        }
        let omega = quad_pair.unwrap();
        for op in pe3.n2_pairs() {
            if op == omega {
                continue;
            }
            assert!(is_good_pair(&pe3, op, omega), "{op:?} not good for {omega:?}");
        }

        // the associahedron has a bad pair
        let as3 = construct::associahedron();
        let pairs = as3.n2_pairs();
        let mut found_bad = false;
        'search: for &omega in &pairs {
            for &op in &pairs {
                if op != omega && !is_good_pair(&as3, op, omega) {
                    found_bad = true;
                    break 'search;
                }
            }
        }
        assert!(found_bad, "As3 should have a bad pair");

        // the dodecahedron has none
        let dod = construct::dodecahedron();
        let pairs = dod.n2_pairs();
        for &omega in pairs.iter().take(6) {
            for &op in &pairs {
                if op != omega {
                    assert!(is_good_pair(&dod, op, omega));
                }
            }
        }
    }
}
