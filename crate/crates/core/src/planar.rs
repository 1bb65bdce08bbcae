//! Embedded planar graphs: general (not necessarily simple) 3-polytopes and
//! the 4-regular graphs of ideal right-angled polytopes.

use std::collections::HashMap;

use crate::error::{PolyError, Result};
use crate::rotation::{self, CanonicalCode};

/// A planar graph with a rotation system whose face tracing closes up into a
/// sphere. This is the shared substrate of [`GeneralPolytope3`] and
/// [`QuadGraph`].
#[derive(Clone, Debug)]
pub struct PlanarGraph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    /// Faces as directed closed walks (the vertex sequences).
    faces: Vec<Vec<usize>>,
    /// For a directed edge (u,v): (face index, position of u in the walk).
    dart_face: HashMap<(usize, usize), (usize, usize)>,
}

impl PlanarGraph {
    /// Build from rotation lists and verify the embedding is spherical.
    pub fn new(adj: Vec<Vec<usize>>) -> Result<Self> {
        rotation::check_rotation_system(&adj).map_err(PolyError::NotPolytopal)?;
        if adj.is_empty() || !rotation::is_connected(&adj) {
            return Err(PolyError::NotPolytopal("graph is empty or disconnected".into()));
        }
        let n = adj.len();
        let mut edges = Vec::new();
        for (u, nbrs) in adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        edges.sort_unstable();

        // trace faces: after entering v along (u,v), leave along the
        // successor of u in the rotation at v
        let mut dart_face: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for u in 0..n {
            for &v in &adj[u] {
                if dart_face.contains_key(&(u, v)) {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut a, mut b) = (u, v);
                let fid = faces.len();
                loop {
                    if dart_face.contains_key(&(a, b)) {
                        break;
                    }
                    dart_face.insert((a, b), (fid, walk.len()));
                    walk.push(a);
                    let p = adj[b].iter().position(|&w| w == a).unwrap();
                    let w = adj[b][(p + 1) % adj[b].len()];
                    a = b;
                    b = w;
                }
                faces.push(walk);
            }
        }
        let v = n as i64;
        let e = edges.len() as i64;
        let f = faces.len() as i64;
        if v - e + f != 2 {
            return Err(PolyError::NotPolytopal(format!(
                "rotation system has Euler characteristic {}, not a sphere",
                v - e + f
            )));
        }
        Ok(PlanarGraph { adj, edges, faces, dart_face })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn adj(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Faces as directed vertex walks.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    /// Face to the left of the directed edge (u,v), with the position of `u`
    /// in the face walk.
    pub fn dart_face(&self, u: usize, v: usize) -> (usize, usize) {
        self.dart_face[&(u, v)]
    }

    /// Every face walk visits each vertex at most once. Together with
    /// 3-connectivity this characterizes polytopal embeddings.
    pub fn faces_are_simple(&self) -> bool {
        self.faces.iter().all(|w| {
            let mut s = w.clone();
            s.sort_unstable();
            s.windows(2).all(|p| p[0] != p[1])
        })
    }

    pub fn is_three_connected(&self) -> bool {
        rotation::is_three_connected(&self.adj)
    }

    pub fn canonical(&self) -> CanonicalCode {
        rotation::canonical_code(&self.adj)
    }

    pub fn is_isomorphic(&self, other: &PlanarGraph) -> bool {
        self.adj.len() == other.adj.len() && self.canonical().code == other.canonical().code
    }

    /// The planar dual: one vertex per face, rotations induced by the face
    /// walks.
    pub fn dual(&self) -> Result<PlanarGraph> {
        let mut adj = vec![Vec::new(); self.faces.len()];
        for (fid, walk) in self.faces.iter().enumerate() {
            let k = walk.len();
            for i in 0..k {
                let u = walk[i];
                let v = walk[(i + 1) % k];
                // face on the other side of edge (u,v)
                let (g, _) = self.dart_face(v, u);
                adj[fid].push(g);
            }
        }
        PlanarGraph::new(adj)
    }
}

/// A general (not necessarily simple) combinatorial 3-polytope: a simple,
/// planar, 3-connected graph with a spherical rotation system.
#[derive(Clone, Debug)]
pub struct GeneralPolytope3 {
    graph: PlanarGraph,
}

impl GeneralPolytope3 {
    pub fn new(adj: Vec<Vec<usize>>) -> Result<Self> {
        let graph = PlanarGraph::new(adj)?;
        for v in 0..graph.vertex_count() {
            if graph.adj(v).len() < 3 {
                return Err(PolyError::NotPolytopal(format!(
                    "vertex {v} has degree {} < 3",
                    graph.adj(v).len()
                )));
            }
        }
        for face in graph.faces() {
            if face.len() < 3 {
                return Err(PolyError::NotPolytopal("a face has fewer than 3 sides".into()));
            }
        }
        if !graph.faces_are_simple() {
            return Err(PolyError::NotPolytopal("a face walk repeats a vertex".into()));
        }
        if !graph.is_three_connected() {
            return Err(PolyError::NotPolytopal("graph is not 3-connected".into()));
        }
        Ok(GeneralPolytope3 { graph })
    }

    pub fn graph(&self) -> &PlanarGraph {
        &self.graph
    }

    pub fn f0(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn f1(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn f2(&self) -> usize {
        self.graph.face_count()
    }

    pub fn dual(&self) -> Result<GeneralPolytope3> {
        GeneralPolytope3::new(self.graph.dual()?.rotations().to_vec())
    }

    pub fn is_isomorphic(&self, other: &GeneralPolytope3) -> bool {
        self.graph.is_isomorphic(&other.graph)
    }
}

/// Classes of the checkerboard coloring of a 4-regular planar graph's faces.
#[derive(Clone, Debug)]
pub struct Checkerboard {
    /// color[face] in {0, 1}; faces sharing an edge get different colors
    pub color: Vec<u8>,
}

/// The graph of an ideal right-angled polytope: 4-regular, planar,
/// 3-connected, with checkerboard-colorable faces. Equivalently, a medial
/// graph of a 3-polytope.
#[derive(Clone, Debug)]
pub struct QuadGraph {
    graph: PlanarGraph,
}

impl QuadGraph {
    pub fn new(adj: Vec<Vec<usize>>) -> Result<Self> {
        let graph = PlanarGraph::new(adj)?;
        for v in 0..graph.vertex_count() {
            if graph.adj(v).len() != 4 {
                return Err(PolyError::NotMedial(format!(
                    "vertex {v} has degree {}, expected 4",
                    graph.adj(v).len()
                )));
            }
        }
        if !graph.faces_are_simple() {
            return Err(PolyError::NotMedial("a face walk repeats a vertex".into()));
        }
        if !graph.is_three_connected() {
            return Err(PolyError::NotMedial("graph is not 3-connected".into()));
        }
        let qg = QuadGraph { graph };
        qg.checkerboard()?; // must exist
        Ok(qg)
    }

    pub fn graph(&self) -> &PlanarGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// The proper 2-coloring of the faces (exists for every connected graph
    /// with all vertex degrees even).
    pub fn checkerboard(&self) -> Result<Checkerboard> {
        let nf = self.graph.face_count();
        let mut color = vec![u8::MAX; nf];
        color[0] = 0;
        let mut stack = vec![0usize];
        while let Some(f) = stack.pop() {
            let walk = &self.graph.faces()[f];
            let k = walk.len();
            for i in 0..k {
                let u = walk[i];
                let v = walk[(i + 1) % k];
                let (g, _) = self.graph.dart_face(v, u);
                if color[g] == u8::MAX {
                    color[g] = 1 - color[f];
                    stack.push(g);
                } else if color[g] == color[f] {
                    return Err(PolyError::NotMedial(
                        "faces do not admit a checkerboard 2-coloring".into(),
                    ));
                }
            }
        }
        Ok(Checkerboard { color })
    }

    pub fn is_isomorphic(&self, other: &QuadGraph) -> bool {
        self.graph.is_isomorphic(&other.graph)
    }

    pub fn canonical_hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        for x in &self.graph.canonical().code {
            h.update(x.to_be_bytes());
        }
        let digest = h.finalize();
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    #[test]
    fn pyramid_is_general_polytope() {
        let p = construct::pyramid(4).unwrap();
        assert_eq!(p.f0(), 5);
        assert_eq!(p.f1(), 8);
        assert_eq!(p.f2(), 5);
    }

    #[test]
    fn antiprism_is_quadgraph() {
        let a = construct::antiprism(3).unwrap();
        assert_eq!(a.vertex_count(), 6);
        assert_eq!(a.graph().edge_count(), 12);
        assert_eq!(a.graph().face_count(), 8);
        let cb = a.checkerboard().unwrap();
        assert_eq!(cb.color.iter().filter(|&&c| c == 0).count(), 4);
    }

    #[test]
    fn non_three_connected_quad_graph_rejected() {
        // Chain two octahedra: delete an edge in each (leaving two degree-3
        // vertices per copy) and reconnect across the copies in the same
        // rotation slots. The pair of new edges is a 2-edge-cut, so the
        // result is 4-regular and planar but only 2-connected.
        let base = construct::antiprism(3).unwrap().graph().rotations().to_vec();
        let (a, b) = (0usize, base[0][0]);
        let strip = |adj: &mut Vec<Vec<usize>>| {
            // record positions, then replace instead of deleting
            let pa = adj[a].iter().position(|&x| x == b).unwrap();
            let pb = adj[b].iter().position(|&x| x == a).unwrap();
            (pa, pb)
        };
        let mut first = base.clone();
        let (pa, pb) = strip(&mut first);
        // mirrored second copy so the two drawings face each other
        let second: Vec<Vec<usize>> = base
            .iter()
            .map(|nbrs| nbrs.iter().rev().copied().collect())
            .collect();
        let pa2 = second[a].iter().position(|&x| x == b).unwrap();
        let pb2 = second[b].iter().position(|&x| x == a).unwrap();
        let n = base.len();
        let mut full: Vec<Vec<usize>> = first;
        for nbrs in &second {
            full.push(nbrs.iter().map(|&x| x + n).collect());
        }
        full[a][pa] = a + n;
        full[b][pb] = b + n;
        full[a + n][pa2] = a;
        full[b + n][pb2] = b;
        match QuadGraph::new(full) {
            Err(PolyError::NotMedial(_)) => {}
            other => panic!("expected NotMedial, got {other:?}"),
        }
    }
}
