//! Construction of named polytopes and the generating operations: vertex,
//! edge and edge-pair cuts, the vertex-then-edge full truncation, medial
//! graphs, base recovery, and edge-twists of quad graphs.

use crate::error::{PolyError, Result};
use crate::planar::{GeneralPolytope3, QuadGraph};
use crate::polytope::SimplePolytope3;

/// Names understood by [`make_named`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Named {
    Simplex,
    Cube,
    Prism(usize),
    Pyramid(usize),
    Antiprism(usize),
    M5xI,
    As3,
    Pe3,
    P8,
    Dodecahedron,
}

/// A named combinatorial object; the kind depends on the name.
#[derive(Clone, Debug)]
pub enum NamedObject {
    Simple(SimplePolytope3),
    General(GeneralPolytope3),
    Quad(QuadGraph),
}

impl NamedObject {
    pub fn as_simple(&self) -> Option<&SimplePolytope3> {
        match self {
            NamedObject::Simple(p) => Some(p),
            _ => None,
        }
    }
}

pub fn make_named(name: Named) -> Result<NamedObject> {
    Ok(match name {
        Named::Simplex => NamedObject::Simple(simplex()),
        Named::Cube => NamedObject::Simple(cube()),
        Named::Prism(k) => NamedObject::Simple(prism(k)?),
        Named::Pyramid(k) => NamedObject::General(pyramid(k)?),
        Named::Antiprism(k) => NamedObject::Quad(antiprism(k)?),
        Named::M5xI => NamedObject::Simple(prism(5)?),
        Named::As3 => NamedObject::Simple(associahedron()),
        Named::Pe3 => NamedObject::Simple(permutohedron()),
        Named::P8 => NamedObject::Simple(p8()),
        Named::Dodecahedron => NamedObject::Simple(dodecahedron()),
    })
}

pub fn parse_named(s: &str) -> Result<Named> {
    let lower = s.to_ascii_lowercase();
    let (base, param) = match lower.split_once(':') {
        Some((b, p)) => (b.to_string(), Some(p.to_string())),
        None => (lower, None),
    };
    let k = |p: Option<String>| -> Result<usize> {
        p.ok_or_else(|| PolyError::BadParameter(format!("{s}: missing parameter")))?
            .parse()
            .map_err(|_| PolyError::BadParameter(format!("{s}: bad parameter")))
    };
    Ok(match base.as_str() {
        "simplex" | "tetrahedron" => Named::Simplex,
        "cube" => Named::Cube,
        "prism" => Named::Prism(k(param)?),
        "pyramid" => Named::Pyramid(k(param)?),
        "antiprism" => Named::Antiprism(k(param)?),
        "m5xi" => Named::M5xI,
        "as3" => Named::As3,
        "pe3" => Named::Pe3,
        "p8" => Named::P8,
        "dodecahedron" => Named::Dodecahedron,
        _ => return Err(PolyError::BadParameter(format!("unknown name {s}"))),
    })
}

/// The 3-simplex.
pub fn simplex() -> SimplePolytope3 {
    SimplePolytope3::new(vec![
        vec![1, 2, 3],
        vec![0, 3, 2],
        vec![0, 1, 3],
        vec![0, 2, 1],
    ])
    .expect("simplex is valid")
}

/// k-gonal prism; face 0 and 1 are the two k-gons, faces 2..2+k the ring.
pub fn prism(k: usize) -> Result<SimplePolytope3> {
    if k < 3 {
        return Err(PolyError::BadParameter(format!("prism needs k >= 3, got {k}")));
    }
    let s = |i: usize| 2 + (i % k);
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(k + 2);
    adj.push((0..k).map(s).collect()); // top
    adj.push((0..k).rev().map(s).collect()); // bottom
    for i in 0..k {
        adj.push(vec![s(i + 1), 0, s(i + k - 1), 1]);
    }
    SimplePolytope3::new(adj)
}

pub fn cube() -> SimplePolytope3 {
    prism(4).expect("cube is valid")
}

/// k-gonal pyramid as a general polytope; vertex 0 is the apex.
pub fn pyramid(k: usize) -> Result<GeneralPolytope3> {
    if k < 3 {
        return Err(PolyError::BadParameter(format!("pyramid needs k >= 3, got {k}")));
    }
    let b = |i: usize| 1 + (i % k);
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(k + 1);
    adj.push((0..k).map(b).collect());
    for i in 0..k {
        adj.push(vec![0, b(i + k - 1), b(i + 1)]);
    }
    GeneralPolytope3::new(adj)
}

/// The k-antiprism: the medial graph of the k-gonal pyramid.
pub fn antiprism(k: usize) -> Result<QuadGraph> {
    if k < 3 {
        return Err(PolyError::BadParameter(format!("antiprism needs k >= 3, got {k}")));
    }
    medial(&pyramid(k)?)
}

/// The 3-dimensional associahedron: a cube with three pairwise non-adjacent,
/// pairwise orthogonal edges cut.
pub fn associahedron() -> SimplePolytope3 {
    // cube faces: 0 top, 1 bottom, 2..6 the side ring s0..s3
    let c = cube();
    let p = cut_edge(&c, (0, 2)).expect("first cut");
    let p = cut_edge(&p, (1, 3)).expect("second cut");
    cut_edge(&p, (4, 5)).expect("third cut")
}

/// The cube with two non-adjacent orthogonal edges cut.
pub fn p8() -> SimplePolytope3 {
    let c = cube();
    let p = cut_edge(&c, (0, 2)).expect("first cut");
    cut_edge(&p, (1, 3)).expect("second cut")
}

/// The 3-dimensional permutohedron: full truncation of the tetrahedron.
pub fn permutohedron() -> SimplePolytope3 {
    truncate_full(&pyramid(3).expect("tetrahedron")).expect("Pe3 is valid")
}

/// The dodecahedron: the smallest Pogorelov polytope.
pub fn dodecahedron() -> SimplePolytope3 {
    // faces: 0 top cap, 1..=5 upper ring u1..u5, 6..=10 lower ring l1..l5,
    // 11 bottom cap; u_i is adjacent to l_i and l_{i+1}
    let u = |i: usize| 1 + (i % 5);
    let l = |i: usize| 6 + (i % 5);
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(12);
    adj.push((0..5).rev().map(u).collect());
    for i in 0..5 {
        adj.push(vec![0, u(i + 1), l(i + 1), l(i), u(i + 4)]);
    }
    for i in 0..5 {
        adj.push(vec![u(i), l(i + 1), 11, l(i + 4), u(i + 4)]);
    }
    adj.push((0..5).map(l).collect());
    SimplePolytope3::new(adj).expect("dodecahedron is valid")
}

/// Locate the faces (c, d) at the two endpoints of the edge a∩b:
/// c precedes b in the rotation of a, d follows it.
fn edge_flanks(p: &SimplePolytope3, a: usize, b: usize) -> Result<(usize, usize)> {
    let nbrs = p.neighbors(a);
    let pos = nbrs
        .iter()
        .position(|&x| x == b)
        .ok_or_else(|| PolyError::NotFound(format!("edge ({a},{b})")))?;
    let d = nbrs[(pos + 1) % nbrs.len()];
    let c = nbrs[(pos + nbrs.len() - 1) % nbrs.len()];
    Ok((c, d))
}

fn insert_between(list: &mut Vec<usize>, x: usize, y: usize, item: usize) -> Result<()> {
    let n = list.len();
    for i in 0..n {
        let (a, b) = (list[i], list[(i + 1) % n]);
        if (a, b) == (x, y) {
            list.insert(i + 1, item);
            return Ok(());
        }
    }
    Err(PolyError::PreconditionViolated(format!(
        "expected consecutive pair ({x},{y}) in rotation"
    )))
}

fn replace_in(list: &mut [usize], from: usize, to: usize) -> Result<()> {
    let pos = list
        .iter()
        .position(|&x| x == from)
        .ok_or_else(|| PolyError::NotFound(format!("neighbor {from}")))?;
    list[pos] = to;
    Ok(())
}

/// Cut off a vertex: the new face is a triangle, m grows by one.
pub fn cut_vertex(p: &SimplePolytope3, v: [usize; 3]) -> Result<SimplePolytope3> {
    let mut sorted = v;
    sorted.sort_unstable();
    let tri = *p
        .oriented_vertices()
        .iter()
        .find(|t| {
            let mut s = **t;
            s.sort_unstable();
            s == sorted
        })
        .ok_or_else(|| PolyError::NotFound(format!("vertex {v:?}")))?;
    let [i, j, k] = tri;
    let n = p.m();
    let mut adj = p.all_neighbors().to_vec();
    insert_between(&mut adj[i], j, k, n)?;
    insert_between(&mut adj[j], k, i, n)?;
    insert_between(&mut adj[k], i, j, n)?;
    adj.push(vec![i, j, k]);
    SimplePolytope3::new(adj)
}

/// Cut off an edge: the new face is a quadrangle, m grows by one.
pub fn cut_edge(p: &SimplePolytope3, e: (usize, usize)) -> Result<SimplePolytope3> {
    let (a, b) = e;
    if !p.are_adjacent(a, b) {
        return Err(PolyError::NotFound(format!("edge ({a},{b})")));
    }
    let (c, d) = edge_flanks(p, a, b)?;
    let n = p.m();
    let mut adj = p.all_neighbors().to_vec();
    replace_in(&mut adj[a], b, n)?;
    replace_in(&mut adj[b], a, n)?;
    insert_between(&mut adj[c], b, a, n)?;
    insert_between(&mut adj[d], a, b, n)?;
    adj.push(vec![d, a, c, b]);
    SimplePolytope3::new(adj)
}

/// Edge cut restricted to edges not lying in quadrangles; this is the
/// operation that preserves the almost Pogorelov family.
pub fn cut_edge_no_quad(p: &SimplePolytope3, e: (usize, usize)) -> Result<SimplePolytope3> {
    let (a, b) = e;
    if p.are_adjacent(a, b) && (p.degree(a) == 4 || p.degree(b) == 4) {
        return Err(PolyError::PreconditionViolated(format!(
            "edge ({a},{b}) lies in a quadrangle"
        )));
    }
    cut_edge(p, e)
}

/// Cut off a pair of adjacent edges of a face with at least 6 sides by one
/// plane: the new face is a pentagon, m grows by one.
pub fn cut_edge_pair(
    p: &SimplePolytope3,
    e1: (usize, usize),
    e2: (usize, usize),
) -> Result<SimplePolytope3> {
    if !p.are_adjacent(e1.0, e1.1) || !p.are_adjacent(e2.0, e2.1) {
        return Err(PolyError::NotFound(format!("edges {e1:?}, {e2:?}")));
    }
    // the common face and the two side faces
    let s1 = [e1.0, e1.1];
    let s2 = [e2.0, e2.1];
    let mut common = None;
    for &f in &s1 {
        if s2.contains(&f) {
            common = Some(f);
        }
    }
    let f = common.ok_or_else(|| {
        PolyError::PreconditionViolated("edges do not lie on a common face".into())
    })?;
    let a = if e1.0 == f { e1.1 } else { e1.0 };
    let b = if e2.0 == f { e2.1 } else { e2.0 };
    if a == b {
        return Err(PolyError::PreconditionViolated("edges coincide".into()));
    }
    if !p.is_vertex([f, a, b]) {
        return Err(PolyError::PreconditionViolated(
            "edges are not adjacent on the common face".into(),
        ));
    }
    if p.degree(f) < 6 {
        return Err(PolyError::PreconditionViolated(format!(
            "face {f} has {} < 6 sides",
            p.degree(f)
        )));
    }
    // order (a, b) along the rotation of f
    let (a, b) = {
        let nbrs = p.neighbors(f);
        let pa = nbrs.iter().position(|&x| x == a).unwrap();
        if nbrs[(pa + 1) % nbrs.len()] == b {
            (a, b)
        } else {
            (b, a)
        }
    };
    let (c, _) = edge_flanks(p, f, a)?; // other face at the far endpoint of f∩a
    let (_, d) = edge_flanks(p, f, b)?;
    if [c, d].contains(&a) || [c, d].contains(&b) || c == d || c == f || d == f {
        return Err(PolyError::PreconditionViolated(
            "cut neighborhood is degenerate".into(),
        ));
    }
    let n = p.m();
    let mut adj = p.all_neighbors().to_vec();
    // f: ..., c, a, b, d, ...  ->  ..., c, N, d, ...
    {
        let orig = p.neighbors(f);
        let len = orig.len();
        let pa = orig.iter().position(|&x| x == a).unwrap();
        let mut rebuilt = Vec::with_capacity(len - 1);
        rebuilt.push(n);
        let mut idx = (pa + 2) % len; // skip a and b
        while orig[idx] != a {
            rebuilt.push(orig[idx]);
            idx = (idx + 1) % len;
        }
        adj[f] = rebuilt;
    }
    replace_in(&mut adj[a], f, n)?;
    replace_in(&mut adj[b], f, n)?;
    insert_between(&mut adj[c], a, f, n)?;
    insert_between(&mut adj[d], f, b, n)?;
    adj.push(vec![d, f, c, a, b]);
    SimplePolytope3::new(adj)
}

/// Full truncation: cut off all vertices, then all old edges, realized as a
/// single combinatorial step. New faces: one per old face, vertex and edge.
pub fn truncate_full(q: &GeneralPolytope3) -> Result<SimplePolytope3> {
    let g = q.graph();
    let nf = g.face_count();
    let nv = g.vertex_count();
    let face_id = |f: usize| f;
    let vert_id = |v: usize| nf + v;
    let edge_id = |e: usize| nf + nv + e;

    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(nf + nv + g.edge_count());
    // old faces: boundary alternates vertex-faces and edge-faces
    for walk in g.faces() {
        let k = walk.len();
        let mut list = Vec::with_capacity(2 * k);
        for i in 0..k {
            let u = walk[i];
            let v = walk[(i + 1) % k];
            list.push(vert_id(u));
            list.push(edge_id(g.edge_index(u, v).unwrap()));
        }
        adj.push(list);
    }
    // vertex faces: alternate edge-faces and old faces, traversing the
    // rotation of the vertex in reverse to keep the global orientation
    for v in 0..nv {
        let rot = g.adj(v);
        let d = rot.len();
        let mut list = Vec::with_capacity(2 * d);
        for i in (0..d).rev() {
            let u_next = rot[(i + 1) % d];
            let u = rot[i];
            list.push(edge_id(g.edge_index(v, u_next).unwrap()));
            let (corner_face, _) = g.dart_face(u, v);
            list.push(face_id(corner_face));
        }
        adj.push(list);
    }
    // edge faces: quadrangles [face, vertex, face, vertex]
    for &(u, v) in g.edges() {
        let (left, _) = g.dart_face(u, v);
        let (right, _) = g.dart_face(v, u);
        adj.push(vec![face_id(left), vert_id(u), face_id(right), vert_id(v)]);
    }
    SimplePolytope3::new(adj)
}

/// The medial graph: one vertex per edge of `q`, adjacent when the edges
/// follow each other in a face.
pub fn medial(q: &GeneralPolytope3) -> Result<QuadGraph> {
    let g = q.graph();
    let edge_at = |a: usize, b: usize| g.edge_index(a, b).unwrap();
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(g.edge_count());
    for &(u, v) in g.edges() {
        // walk positions of the two darts
        let (lf, lp) = g.dart_face(u, v);
        let (rf, rp) = g.dart_face(v, u);
        let lwalk = &g.faces()[lf];
        let rwalk = &g.faces()[rf];
        let lk = lwalk.len();
        let rk = rwalk.len();
        // successor edge in the left face is at v, predecessor at u
        let succ_l = edge_at(v, lwalk[(lp + 2) % lk]);
        let pred_l = edge_at(lwalk[(lp + lk - 1) % lk], u);
        let succ_r = edge_at(u, rwalk[(rp + 2) % rk]);
        let pred_r = edge_at(rwalk[(rp + rk - 1) % rk], v);
        adj.push(vec![succ_l, pred_r, succ_r, pred_l]);
    }
    QuadGraph::new(adj)
}

/// Recover the two dual base polytopes whose medial graph is `g`.
pub fn recover_base(g: &QuadGraph) -> Result<(GeneralPolytope3, GeneralPolytope3)> {
    let cb = g.checkerboard()?;
    let build = |color: u8| -> Result<GeneralPolytope3> {
        let graph = g.graph();
        let faces_of_color: Vec<usize> = (0..graph.face_count())
            .filter(|&f| cb.color[f] == color)
            .collect();
        let face_pos: Vec<Option<usize>> = {
            let mut v = vec![None; graph.face_count()];
            for (i, &f) in faces_of_color.iter().enumerate() {
                v[f] = Some(i);
            }
            v
        };
        // at each graph vertex the four surrounding faces alternate colors;
        // the two same-colored ones get joined by an edge "through" the vertex
        let other_face = |x: usize, f: usize| -> Result<usize> {
            let rot = graph.adj(x);
            let mut around = Vec::with_capacity(4);
            for (i, &u) in rot.iter().enumerate() {
                let _ = i;
                let (cf, _) = graph.dart_face(u, x);
                around.push(cf);
            }
            let mine: Vec<usize> = around
                .iter()
                .copied()
                .filter(|&cf| cb.color[cf] == color)
                .collect();
            if mine.len() != 2 || mine[0] == mine[1] {
                return Err(PolyError::NotMedial(format!(
                    "faces around vertex {x} do not alternate"
                )));
            }
            if mine[0] == f {
                Ok(mine[1])
            } else if mine[1] == f {
                Ok(mine[0])
            } else {
                Err(PolyError::NotMedial(format!(
                    "face {f} does not touch vertex {x}"
                )))
            }
        };
        let mut adj: Vec<Vec<usize>> = Vec::with_capacity(faces_of_color.len());
        for &f in &faces_of_color {
            let walk = &graph.faces()[f];
            let mut list = Vec::with_capacity(walk.len());
            for &x in walk {
                let of = other_face(x, f)?;
                list.push(face_pos[of].ok_or_else(|| {
                    PolyError::NotMedial("checkerboard classes are inconsistent".into())
                })?);
            }
            adj.push(list);
        }
        GeneralPolytope3::new(adj).map_err(|e| PolyError::NotMedial(e.to_string()))
    };
    Ok((build(0)?, build(1)?))
}

/// Cut every (4-valent) vertex of an ideal polytope graph into a
/// quadrangle. The result is the ideal almost Pogorelov polytope of `g`.
pub fn ideal_from_quadgraph(g: &QuadGraph) -> Result<SimplePolytope3> {
    let graph = g.graph();
    let nf = graph.face_count();
    let quad_id = |x: usize| nf + x;
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(nf + graph.vertex_count());
    for walk in graph.faces() {
        let k = walk.len();
        let mut list = Vec::with_capacity(2 * k);
        for i in 0..k {
            let x = walk[i];
            let y = walk[(i + 1) % k];
            list.push(quad_id(x));
            let (of, _) = graph.dart_face(y, x);
            list.push(of);
        }
        adj.push(list);
    }
    for x in 0..graph.vertex_count() {
        let rot = graph.adj(x);
        // faces around x in reverse rotation order, for orientation
        let mut list = Vec::with_capacity(4);
        for &u in rot.iter().rev() {
            let (cf, _) = graph.dart_face(u, x);
            list.push(cf);
        }
        adj.push(list);
    }
    SimplePolytope3::new(adj)
}

/// The edge-twist of Fig-2 type: two disjoint edges on a common face are
/// replaced by a crossing resolved as a new 4-valent vertex joined to their
/// four endpoints. A twist is restricted when the two edges are adjacent to
/// a common edge of that face.
pub fn edge_twist(
    g: &QuadGraph,
    e1: (usize, usize),
    e2: (usize, usize),
    restricted: bool,
) -> Result<QuadGraph> {
    let graph = g.graph();
    let es = [e1.0, e1.1, e2.0, e2.1];
    {
        let mut s = es;
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(PolyError::PreconditionViolated(
                "edges share a vertex".into(),
            ));
        }
    }
    if graph.edge_index(e1.0, e1.1).is_none() || graph.edge_index(e2.0, e2.1).is_none() {
        return Err(PolyError::NotFound(format!("edges {e1:?}, {e2:?}")));
    }
    // find a face whose walk contains both edges
    let mut found: Option<(usize, usize, usize)> = None; // (face, pos1, pos2)
    'outer: for (fid, walk) in graph.faces().iter().enumerate() {
        let k = walk.len();
        let mut p1 = None;
        let mut p2 = None;
        for i in 0..k {
            let pair = (walk[i], walk[(i + 1) % k]);
            let unordered = (pair.0.min(pair.1), pair.0.max(pair.1));
            if unordered == (e1.0.min(e1.1), e1.0.max(e1.1)) {
                p1 = Some(i);
            }
            if unordered == (e2.0.min(e2.1), e2.0.max(e2.1)) {
                p2 = Some(i);
            }
        }
        if let (Some(a), Some(b)) = (p1, p2) {
            found = Some((fid, a, b));
            break 'outer;
        }
    }
    let (fid, p1, p2) = found.ok_or_else(|| {
        PolyError::PreconditionViolated("edges do not bound a common face".into())
    })?;
    let walk = &graph.faces()[fid];
    let k = walk.len();
    let (a, b) = (walk[p1], walk[(p1 + 1) % k]);
    let (c, d) = (walk[p2], walk[(p2 + 1) % k]);
    // arcs between the edges, in face order: b..c and d..a
    let arc1 = (p2 + k - p1 - 1) % k;
    let arc2 = (p1 + k - p2 - 1) % k;
    if restricted && arc1 != 1 && arc2 != 1 {
        return Err(PolyError::PreconditionViolated(
            "twist is not restricted: neither arc is a single edge".into(),
        ));
    }
    let w = graph.vertex_count();
    let mut adj: Vec<Vec<usize>> = graph.rotations().to_vec();
    replace_in(&mut adj[a], b, w)?;
    replace_in(&mut adj[b], a, w)?;
    replace_in(&mut adj[c], d, w)?;
    replace_in(&mut adj[d], c, w)?;
    adj.push(vec![c, b, a, d]);
    QuadGraph::new(adj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn named_constructions_validate() {
        for name in [
            Named::Simplex,
            Named::Cube,
            Named::Prism(3),
            Named::Prism(5),
            Named::Pyramid(4),
            Named::Antiprism(3),
            Named::As3,
            Named::Pe3,
            Named::P8,
            Named::Dodecahedron,
        ] {
            make_named(name).unwrap();
        }
        assert!(matches!(
            make_named(Named::Prism(2)),
            Err(PolyError::BadParameter(_))
        ));
    }

    #[test]
    fn as3_counts() {
        let p = associahedron();
        assert_eq!(p.m(), 9);
        assert_eq!(p.p_vector(), BTreeMap::from([(4, 3), (5, 6)]));
    }

    #[test]
    fn p8_counts() {
        let p = p8();
        assert_eq!(p.m(), 8);
        assert_eq!(p.p_vector(), BTreeMap::from([(4, 4), (5, 4)]));
    }

    #[test]
    fn pe3_counts() {
        let p = permutohedron();
        assert_eq!(p.m(), 14);
        assert_eq!(p.f0(), 24);
        assert_eq!(p.f1(), 36);
        assert_eq!(p.p_vector(), BTreeMap::from([(4, 6), (6, 8)]));
        assert_eq!(p.n2_pairs().len(), 55);
    }

    #[test]
    fn dodecahedron_counts() {
        let p = dodecahedron();
        assert_eq!(p.m(), 12);
        assert_eq!(p.p_vector(), BTreeMap::from([(5, 12)]));
    }

    #[test]
    fn cut_edge_of_cube_is_pentagonal_prism() {
        // only m = 7 is forced a priori; the p-vector follows from the
        // construction and the identity sum (6-k) p_k = 12
        let p = cut_edge(&cube(), (0, 2)).unwrap();
        assert_eq!(p.m(), 7);
        assert_eq!(p.p_vector(), BTreeMap::from([(4, 5), (5, 2)]));
        assert!(p.is_isomorphic(&prism(5).unwrap()));
    }

    #[test]
    fn cut_vertex_of_simplex_is_triangle_frustum() {
        let t = simplex();
        let v = t.vertices()[0];
        let p = cut_vertex(&t, v).unwrap();
        assert_eq!(p.m(), 5);
        assert!(p.is_isomorphic(&prism(3).unwrap()));
    }

    #[test]
    fn cut_edge_pair_adds_pentagon() {
        // Pe3 has hexagons; cut a pair of adjacent edges of one
        let p = permutohedron();
        let f = (0..p.m()).find(|&f| p.degree(f) == 6).unwrap();
        let nbrs = p.neighbors(f).to_vec();
        let q = cut_edge_pair(&p, (f, nbrs[0]), (f, nbrs[1])).unwrap();
        assert_eq!(q.m(), p.m() + 1);
        assert_eq!(q.degree(q.m() - 1), 5);
    }

    #[test]
    fn cut_edge_pair_needs_big_face() {
        let c = cube();
        let nbrs = c.neighbors(0).to_vec();
        assert!(matches!(
            cut_edge_pair(&c, (0, nbrs[0]), (0, nbrs[1])),
            Err(PolyError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn truncate_full_of_tetrahedron_is_pe3() {
        let p = truncate_full(&pyramid(3).unwrap()).unwrap();
        assert!(p.is_isomorphic(&permutohedron()));
    }

    #[test]
    fn truncate_full_counts() {
        let p = truncate_full(&GeneralPolytope3::new(
            cube_vertex_graph(),
        ).unwrap())
        .unwrap();
        assert_eq!(p.m(), 26);
        assert_eq!(*p.p_vector().get(&4).unwrap(), 12);
    }

    fn cube_vertex_graph() -> Vec<Vec<usize>> {
        vec![
            vec![1, 3, 4],
            vec![2, 0, 5],
            vec![3, 1, 6],
            vec![0, 2, 7],
            vec![7, 5, 0],
            vec![4, 6, 1],
            vec![5, 7, 2],
            vec![6, 4, 3],
        ]
    }

    #[test]
    fn medial_of_pyramid_is_antiprism() {
        for k in 3..=6 {
            let m = medial(&pyramid(k).unwrap()).unwrap();
            assert_eq!(m.vertex_count(), 2 * k);
            assert_eq!(m.graph().face_count(), 2 * k + 2);
        }
    }

    #[test]
    fn medial_of_tetrahedron_is_octahedron() {
        let m = medial(&pyramid(3).unwrap()).unwrap();
        let oct = QuadGraph::new(vec![
            vec![1, 2, 3, 4],
            vec![0, 4, 5, 2],
            vec![0, 1, 5, 3],
            vec![0, 2, 5, 4],
            vec![0, 3, 5, 1],
            vec![4, 3, 2, 1],
        ])
        .unwrap();
        assert!(m.is_isomorphic(&oct));
    }

    #[test]
    fn medial_of_dual_pair_agrees() {
        let cube_g = GeneralPolytope3::new(cube_vertex_graph()).unwrap();
        let oct_g = cube_g.dual().unwrap();
        let m1 = medial(&cube_g).unwrap();
        let m2 = medial(&oct_g).unwrap();
        assert_eq!(m1.vertex_count(), 12);
        assert!(m1.is_isomorphic(&m2));
    }

    #[test]
    fn recover_base_roundtrip() {
        for k in 3..=6 {
            let q = pyramid(k).unwrap();
            let m = medial(&q).unwrap();
            let (b0, b1) = recover_base(&m).unwrap();
            assert!(b0.is_isomorphic(&q) && b1.is_isomorphic(&q));
            assert!(medial(&b0).unwrap().is_isomorphic(&m));
        }
        let cube_g = GeneralPolytope3::new(cube_vertex_graph()).unwrap();
        let m = medial(&cube_g).unwrap();
        let (b0, b1) = recover_base(&m).unwrap();
        let ok = (b0.is_isomorphic(&cube_g) && b1.is_isomorphic(&cube_g.dual().unwrap()))
            || (b1.is_isomorphic(&cube_g) && b0.is_isomorphic(&cube_g.dual().unwrap()));
        assert!(ok);
    }

    #[test]
    fn ideal_from_antiprism3_is_pe3() {
        let p = ideal_from_quadgraph(&antiprism(3).unwrap()).unwrap();
        assert!(p.is_isomorphic(&permutohedron()));
    }

    #[test]
    fn ideal_from_antiprism4() {
        let p = ideal_from_quadgraph(&antiprism(4).unwrap()).unwrap();
        assert_eq!(p.m(), 18);
        assert_eq!(*p.p_vector().get(&4).unwrap(), 8);
    }

    #[test]
    fn ideal_route_matches_truncation_route() {
        for k in 3..=5 {
            let q = pyramid(k).unwrap();
            let via_medial = ideal_from_quadgraph(&medial(&q).unwrap()).unwrap();
            let via_trunc = truncate_full(&q).unwrap();
            assert!(via_medial.is_isomorphic(&via_trunc));
        }
        let cube_g = GeneralPolytope3::new(cube_vertex_graph()).unwrap();
        assert!(ideal_from_quadgraph(&medial(&cube_g).unwrap())
            .unwrap()
            .is_isomorphic(&truncate_full(&cube_g).unwrap()));
    }

    #[test]
    fn quadrangles_of_ideal_polytopes_are_non_adjacent() {
        let p = ideal_from_quadgraph(&antiprism(4).unwrap()).unwrap();
        let quads: Vec<usize> = (0..p.m()).filter(|&f| p.degree(f) == 4).collect();
        for (i, &f) in quads.iter().enumerate() {
            for &g in &quads[i + 1..] {
                assert!(!p.are_adjacent(f, g));
            }
        }
    }

    #[test]
    fn restricted_twist_of_antiprism4() {
        let a4 = antiprism(4).unwrap();
        // find a face with two disjoint edges one apart
        let graph = a4.graph();
        let mut done = false;
        'faces: for walk in graph.faces() {
            let k = walk.len();
            if k < 4 {
                continue;
            }
            for i in 0..k {
                let e1 = (walk[i], walk[(i + 1) % k]);
                let e2 = (walk[(i + 2) % k], walk[(i + 3) % k]);
                if e1.0 != e2.0 && e1.0 != e2.1 && e1.1 != e2.0 && e1.1 != e2.1 {
                    let t = edge_twist(&a4, e1, e2, true).unwrap();
                    assert_eq!(t.vertex_count(), 9);
                    // result must still be a medial graph
                    recover_base(&t).unwrap();
                    done = true;
                    break 'faces;
                }
            }
        }
        assert!(done, "no restricted twist found on the 4-antiprism");
    }

    #[test]
    fn twist_rejects_edges_sharing_a_vertex() {
        let a4 = antiprism(4).unwrap();
        let graph = a4.graph();
        let walk = graph.faces().iter().find(|w| w.len() >= 4).unwrap();
        let e1 = (walk[0], walk[1]);
        let e2 = (walk[1], walk[2]);
        assert!(matches!(
            edge_twist(&a4, e1, e2, false),
            Err(PolyError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn random_restricted_twist_sequences_stay_medial() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20240901);
        for _ in 0..60 {
            let mut g = antiprism(4).unwrap();
            let steps = rng.gen_range(1..=4);
            for _ in 0..steps {
                // collect all restricted twist sites
                let mut sites = Vec::new();
                {
                    let graph = g.graph();
                    for walk in graph.faces() {
                        let k = walk.len();
                        if k < 4 {
                            continue;
                        }
                        for i in 0..k {
                            let e1 = (walk[i], walk[(i + 1) % k]);
                            let e2 = (walk[(i + 2) % k], walk[(i + 3) % k]);
                            let vs = [e1.0, e1.1, e2.0, e2.1];
                            let mut s = vs;
                            s.sort_unstable();
                            if s.windows(2).all(|w| w[0] != w[1]) {
                                sites.push((e1, e2));
                            }
                        }
                    }
                }
                if sites.is_empty() {
                    break;
                }
                let (e1, e2) = sites[rng.gen_range(0..sites.len())];
                g = edge_twist(&g, e1, e2, true).unwrap();
                recover_base(&g).unwrap();
            }
        }
    }
}
