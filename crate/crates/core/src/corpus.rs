//! Test corpora: the exhaustive catalogue of simple 3-polytopes up to a
//! face bound, the curated named list, the almost Pogorelov family grown
//! from the associahedron, and the ideal family from truncations.

use std::collections::BTreeSet;

use crate::belts::{self, PolytopeClass};
use crate::construct;
use crate::error::{PolyError, Result};
use crate::planar::{GeneralPolytope3, PlanarGraph};
use crate::polytope::SimplePolytope3;

/// Split face `v` along the link positions `i < j`: the combinatorial
/// inverse of an edge contraction in the nerve. The two new faces keep the
/// arcs `link[i..=j]` and `link[j..=i]` and share a new edge.
pub fn split_face(p: &SimplePolytope3, v: usize, i: usize, j: usize) -> Result<SimplePolytope3> {
    let link = p.neighbors(v).to_vec();
    let d = link.len();
    if i >= j || j >= d {
        return Err(PolyError::BadParameter(format!(
            "split positions ({i},{j}) out of range for degree {d}"
        )));
    }
    let b = p.m();
    let ui = link[i];
    let uj = link[j];
    let mut adj = p.all_neighbors().to_vec();
    // face v becomes "a" with the forward arc, new face b takes the rest
    let mut a_list = vec![b];
    a_list.extend((i..=j).map(|k| link[k]));
    let mut b_list = vec![v];
    let mut k = j;
    loop {
        b_list.push(link[k % d]);
        if k % d == i {
            break;
        }
        k += 1;
    }
    adj[v] = a_list;
    // interior of the complementary arc switches from v to b
    let mut k = (j + 1) % d;
    while k != i {
        let u = link[k];
        let pos = adj[u].iter().position(|&x| x == v).unwrap();
        adj[u][pos] = b;
        k = (k + 1) % d;
    }
    // the arc endpoints see both: v -> (a, b) at u_i, v -> (b, a) at u_j
    {
        let pos = adj[ui].iter().position(|&x| x == v).unwrap();
        adj[ui][pos] = b;
        adj[ui].insert(pos, v);
    }
    {
        let pos = adj[uj].iter().position(|&x| x == v).unwrap();
        adj[uj].insert(pos, b);
    }
    adj.push(b_list);
    SimplePolytope3::new(adj)
}

/// Every combinatorial type of simple 3-polytope with at most `max_m`
/// faces, generated from the simplex by face splits with canonical-form
/// deduplication. Deterministic order: by m, then canonical code.
pub fn exhaustive_simple(max_m: usize) -> Vec<SimplePolytope3> {
    let mut out: Vec<SimplePolytope3> = Vec::new();
    let mut level = vec![construct::simplex()];
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    while let Some(first) = level.first() {
        let m = first.m();
        let mut sorted: Vec<SimplePolytope3> = level.clone();
        sorted.sort_by(|a, b| a.canonical().code.cmp(&b.canonical().code));
        out.extend(sorted);
        if m >= max_m {
            break;
        }
        let mut next: Vec<SimplePolytope3> = Vec::new();
        seen.clear();
        for p in &level {
            for v in 0..p.m() {
                let d = p.degree(v);
                for i in 0..d {
                    for j in i + 1..d {
                        let q = split_face(p, v, i, j).expect("face splits stay polytopal");
                        if seen.insert(q.canonical().code.clone()) {
                            next.push(q);
                        }
                    }
                }
            }
        }
        level = next;
    }
    out
}

/// Number of combinatorial types per face count, for corpus sanity checks.
/// (Equivalently: triangulations of the 2-sphere on m vertices.)
pub const SIMPLE_POLYTOPE_COUNTS: [(usize, usize); 8] = [
    (4, 1),
    (5, 1),
    (6, 2),
    (7, 5),
    (8, 14),
    (9, 50),
    (10, 233),
    (11, 1249),
];

/// The curated list of named polytopes used throughout the verification
/// suites.
pub fn named_corpus() -> Vec<(String, SimplePolytope3)> {
    let a4_ideal = construct::ideal_from_quadgraph(&construct::antiprism(4).unwrap())
        .expect("ideal polytope of the 4-antiprism");
    vec![
        ("simplex".into(), construct::simplex()),
        ("cube".into(), construct::cube()),
        ("m5xi".into(), construct::prism(5).unwrap()),
        ("prism6".into(), construct::prism(6).unwrap()),
        ("as3".into(), construct::associahedron()),
        ("p8".into(), construct::p8()),
        ("dodecahedron".into(), construct::dodecahedron()),
        ("pe3".into(), construct::permutohedron()),
        ("ideal-antiprism4".into(), a4_ideal),
    ]
}

/// Almost Pogorelov polytopes grown from the associahedron by the two
/// family-preserving operations: cutting an edge not lying in quadrangles,
/// and cutting a pair of adjacent edges of a face with at least 6 sides.
/// Breadth-first with canonical deduplication; every output is verified to
/// be almost Pogorelov.
pub fn apog_family_from_as3(max_m: usize, cap: usize) -> Vec<SimplePolytope3> {
    let mut out = vec![construct::associahedron()];
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    seen.insert(out[0].canonical().code.clone());
    let mut frontier = out.clone();
    while !frontier.is_empty() && out.len() < cap {
        let mut next = Vec::new();
        for p in &frontier {
            if p.m() >= max_m || out.len() + next.len() >= cap {
                break;
            }
            let mut children: Vec<SimplePolytope3> = Vec::new();
            for &(a, b) in p.edges() {
                if p.degree(a) != 4 && p.degree(b) != 4 {
                    children.push(
                        construct::cut_edge_no_quad(p, (a, b)).expect("edge cut stays valid"),
                    );
                }
            }
            for f in 0..p.m() {
                if p.degree(f) < 6 {
                    continue;
                }
                let nbrs = p.neighbors(f).to_vec();
                for k in 0..nbrs.len() {
                    let a = nbrs[k];
                    let b = nbrs[(k + 1) % nbrs.len()];
                    if let Ok(q) = construct::cut_edge_pair(p, (f, a), (f, b)) {
                        children.push(q);
                    }
                }
            }
            for q in children {
                // the family is preserved in the inclusive sense: every
                // 4-belt trivial, with Pogorelov members belonging vacuously
                let class = belts::classify(&q).class;
                assert!(
                    matches!(
                        class,
                        PolytopeClass::Pogorelov
                            | PolytopeClass::AlmostPogorelov
                            | PolytopeClass::IdealAlmostPogorelov
                    ),
                    "family operation left the almost Pogorelov class: {class:?}"
                );
                if seen.insert(q.canonical().code.clone()) {
                    next.push(q);
                }
            }
        }
        next.sort_by(|a, b| (a.m(), &a.canonical().code).cmp(&(b.m(), &b.canonical().code)));
        for q in next.iter() {
            if out.len() < cap {
                out.push(q.clone());
            }
        }
        frontier = next;
    }
    out.sort_by(|a, b| (a.m(), &a.canonical().code).cmp(&(b.m(), &b.canonical().code)));
    out.truncate(cap);
    out
}

/// Every combinatorial 3-polytope (not necessarily simple) with at most
/// `max_edges` edges, by exhaustive search over small graphs and rotation
/// systems.
pub fn all_general_polytopes(max_edges: usize) -> Vec<GeneralPolytope3> {
    let mut out: Vec<GeneralPolytope3> = Vec::new();
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    // 3V/2 <= E, V >= 4
    let max_v = (2 * max_edges) / 3;
    for v in 4..=max_v {
        let pairs: Vec<(usize, usize)> = (0..v)
            .flat_map(|a| (a + 1..v).map(move |b| (a, b)))
            .collect();
        let np = pairs.len();
        for mask in 0u32..(1u32 << np) {
            let ecount = mask.count_ones() as usize;
            if ecount > max_edges || ecount < 3 * v / 2 {
                continue;
            }
            let mut adj_sets: Vec<Vec<usize>> = vec![Vec::new(); v];
            for (idx, &(a, b)) in pairs.iter().enumerate() {
                if mask >> idx & 1 == 1 {
                    adj_sets[a].push(b);
                    adj_sets[b].push(a);
                }
            }
            if adj_sets.iter().any(|n| n.len() < 3) {
                continue;
            }
            if !crate::rotation::is_three_connected(&adj_sets) {
                continue;
            }
            // search rotation systems for a spherical embedding
            if let Some(g) = find_planar_rotation(&adj_sets) {
                if let Ok(gp) = GeneralPolytope3::new(g.rotations().to_vec()) {
                    if seen.insert(gp.graph().canonical().code.clone()) {
                        out.push(gp);
                    }
                }
            }
        }
    }
    out.sort_by_key(|g| (g.f1(), g.graph().canonical().code.clone()));
    out
}

/// Try cyclic orders per vertex until the face tracing closes a sphere.
/// Exponential, adequate for the tiny graphs of the base-polytope corpus.
fn find_planar_rotation(adj_sets: &[Vec<usize>]) -> Option<PlanarGraph> {
    let v = adj_sets.len();
    // fix the first neighbor of each list, permute the rest
    fn rec(
        adj_sets: &[Vec<usize>],
        rotations: &mut Vec<Vec<usize>>,
        vertex: usize,
    ) -> Option<PlanarGraph> {
        if vertex == adj_sets.len() {
            return PlanarGraph::new(rotations.clone()).ok();
        }
        let nbrs = &adj_sets[vertex];
        let first = nbrs[0];
        let mut rest: Vec<usize> = nbrs[1..].to_vec();
        permute_rec(adj_sets, rotations, vertex, first, &mut rest, 0)
    }

    fn permute_rec(
        adj_sets: &[Vec<usize>],
        rotations: &mut Vec<Vec<usize>>,
        vertex: usize,
        first: usize,
        rest: &mut Vec<usize>,
        depth: usize,
    ) -> Option<PlanarGraph> {
        if depth == rest.len() {
            let mut rot = vec![first];
            rot.extend_from_slice(rest);
            rotations[vertex] = rot;
            let found = rec(adj_sets, rotations, vertex + 1);
            rotations[vertex].clear();
            return found;
        }
        for i in depth..rest.len() {
            rest.swap(depth, i);
            if let Some(g) = permute_rec(adj_sets, rotations, vertex, first, rest, depth + 1) {
                return Some(g);
            }
            rest.swap(depth, i);
        }
        None
    }

    let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); v];
    rec(adj_sets, &mut rotations, 0)
}

/// The ideal almost Pogorelov polytopes of all base polytopes with at most
/// `max_edges` edges, one per isomorphism class.
pub fn ideal_family(max_edges: usize) -> Vec<(GeneralPolytope3, SimplePolytope3)> {
    let mut out: Vec<(GeneralPolytope3, SimplePolytope3)> = Vec::new();
    for q in all_general_polytopes(max_edges) {
        let p = construct::truncate_full(&q).expect("truncation of a valid base");
        out.push((q, p));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_face_of_simplex_gives_unique_m5() {
        let t = construct::simplex();
        let q = split_face(&t, 0, 0, 1).unwrap();
        assert_eq!(q.m(), 5);
        assert!(q.is_isomorphic(&construct::prism(3).unwrap()));
    }

    #[test]
    fn exhaustive_counts_up_to_nine() {
        let all = exhaustive_simple(9);
        for &(m, expected) in SIMPLE_POLYTOPE_COUNTS.iter().take(6) {
            let got = all.iter().filter(|p| p.m() == m).count();
            assert_eq!(got, expected, "count at m={m}");
        }
    }

    #[test]
    fn apog_family_members_are_apog() {
        let family = apog_family_from_as3(12, 20);
        assert!(family.len() >= 10);
        assert!(family.iter().all(|p| p.m() <= 12));
    }

    #[test]
    fn general_polytopes_with_few_edges() {
        let all = all_general_polytopes(9);
        let f1s: Vec<usize> = all.iter().map(|g| g.f1()).collect();
        // tetrahedron, square pyramid, triangular prism and bipyramid
        assert_eq!(f1s, vec![6, 8, 9, 9]);
        let self_dual = &all[1];
        assert!(self_dual.is_isomorphic(&self_dual.dual().unwrap()));
    }

    #[test]
    fn ideal_family_face_counts() {
        let fam = ideal_family(8);
        let ms: Vec<usize> = fam.iter().map(|(_, p)| p.m()).collect();
        assert_eq!(ms, vec![14, 18]);
        assert!(fam[0].1.is_isomorphic(&construct::permutohedron()));
    }
}
