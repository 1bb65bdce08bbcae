//! Combinatorial simple 3-polytopes and their nerve complexes.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{PolyError, Result};
use crate::rotation::{self, CanonicalCode};
use crate::subset::OmegaSubset;

/// A combinatorial simple 3-polytope with `m` faces.
///
/// The polytope is stored dually: for each face, the cyclic sequence of
/// adjacent faces given by the planar embedding. Vertices are recovered as
/// face triples (simplicity: exactly three faces meet at every vertex), and
/// the whole structure is validated at construction.
#[derive(Clone)]
pub struct SimplePolytope3 {
    m: usize,
    neighbors: Vec<Vec<usize>>,
    /// Vertices as sorted face triples, lexicographically ordered.
    vertices: Vec<[usize; 3]>,
    /// Vertices with the cyclic orientation induced by the embedding.
    oriented_vertices: Vec<[usize; 3]>,
    /// Edges as sorted face pairs, lexicographically ordered.
    edges: Vec<(usize, usize)>,
    /// Bitmask of neighbors per face.
    adj_mask: Vec<u32>,
    canon: OnceLock<CanonicalCode>,
}

impl std::fmt::Debug for SimplePolytope3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SimplePolytope3")
            .field("m", &self.m)
            .field("neighbors", &self.neighbors)
            .finish()
    }
}

impl SimplePolytope3 {
    /// Build and validate a polytope from per-face cyclic neighbor lists.
    pub fn new(neighbors: Vec<Vec<usize>>) -> Result<Self> {
        let m = neighbors.len();
        if m < 4 {
            return Err(PolyError::NotPolytopal(format!(
                "a simple 3-polytope has at least 4 faces, got {m}"
            )));
        }
        if m > 32 {
            return Err(PolyError::SizeBound(format!(
                "face count {m} exceeds the supported maximum of 32"
            )));
        }
        rotation::check_rotation_system(&neighbors).map_err(PolyError::NotPolytopal)?;
        for (i, nbrs) in neighbors.iter().enumerate() {
            if nbrs.len() < 3 {
                return Err(PolyError::NotPolytopal(format!(
                    "face {i} has only {} neighbors",
                    nbrs.len()
                )));
            }
        }
        if !rotation::is_connected(&neighbors) {
            return Err(PolyError::NotPolytopal("face graph is disconnected".into()));
        }

        // Corner closure: for consecutive (j, k) in the rotation of i, the
        // rotation of j must contain (k, i) consecutively. This is exactly
        // the condition that the corner (i, j, k) closes into a 3-valent
        // vertex and that the rotations orient a triangulated surface.
        let succ = |f: usize, of: usize| -> Option<usize> {
            let nbrs = &neighbors[f];
            let p = nbrs.iter().position(|&x| x == of)?;
            Some(nbrs[(p + 1) % nbrs.len()])
        };
        let mut oriented_vertices: Vec<[usize; 3]> = Vec::new();
        for i in 0..m {
            let d = neighbors[i].len();
            for p in 0..d {
                let j = neighbors[i][p];
                let k = neighbors[i][(p + 1) % d];
                match succ(j, k) {
                    Some(x) if x == i => {}
                    _ => {
                        return Err(PolyError::NotPolytopal(format!(
                            "corner ({i},{j},{k}) does not close into a simple vertex"
                        )))
                    }
                }
                if i < j && i < k {
                    oriented_vertices.push([i, j, k]);
                }
            }
        }
        let mut vertices: Vec<[usize; 3]> = oriented_vertices
            .iter()
            .map(|t| {
                let mut s = *t;
                s.sort_unstable();
                s
            })
            .collect();
        vertices.sort_unstable();
        let before = vertices.len();
        vertices.dedup();
        if vertices.len() != before {
            return Err(PolyError::NotPolytopal(
                "three faces meet in more than one vertex".into(),
            ));
        }

        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (i, nbrs) in neighbors.iter().enumerate() {
            for &j in nbrs {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();

        // Euler relation f0 - f1 + m = 2 pins the sphere.
        let f0 = vertices.len();
        let f1 = edges.len();
        if f0 + m != f1 + 2 || f0 != 2 * (m - 2) || f1 != 3 * (m - 2) {
            return Err(PolyError::NotPolytopal(format!(
                "Euler relation fails: f0={f0}, f1={f1}, m={m}"
            )));
        }

        let mut adj_mask = vec![0u32; m];
        for &(i, j) in &edges {
            adj_mask[i] |= 1 << j;
            adj_mask[j] |= 1 << i;
        }

        // align with the sorted vertex list index-by-index
        let mut oriented = oriented_vertices;
        oriented.sort_by_key(|t| {
            let mut s = *t;
            s.sort_unstable();
            s
        });

        Ok(SimplePolytope3 {
            m,
            neighbors,
            vertices,
            oriented_vertices: oriented,
            edges,
            adj_mask,
            canon: OnceLock::new(),
        })
    }

    /// Number of faces.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of vertices, `2(m-2)`.
    pub fn f0(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges, `3(m-2)`.
    pub fn f1(&self) -> usize {
        self.edges.len()
    }

    /// Cyclic neighbor list of a face.
    pub fn neighbors(&self, face: usize) -> &[usize] {
        &self.neighbors[face]
    }

    pub fn all_neighbors(&self) -> &[Vec<usize>] {
        &self.neighbors
    }

    /// Number of edges of a face.
    pub fn degree(&self, face: usize) -> usize {
        self.neighbors[face].len()
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.adj_mask[i] >> j & 1 == 1
    }

    /// Neighbors of `face` as a bitmask.
    pub fn adjacency_mask(&self, face: usize) -> u32 {
        self.adj_mask[face]
    }

    /// Vertices as sorted face triples.
    pub fn vertices(&self) -> &[[usize; 3]] {
        &self.vertices
    }

    /// Vertices as positively oriented face triples `[i, j, k]` with `i`
    /// minimal; `j` follows `k`-ward in the rotation of `i`.
    pub fn oriented_vertices(&self) -> &[[usize; 3]] {
        &self.oriented_vertices
    }

    /// Edges as sorted face pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Does the face triple form a vertex?
    pub fn is_vertex(&self, mut t: [usize; 3]) -> bool {
        t.sort_unstable();
        self.vertices.binary_search(&t).is_ok()
    }

    /// The p-vector: count of k-gonal faces per k.
    pub fn p_vector(&self) -> BTreeMap<usize, usize> {
        let mut p = BTreeMap::new();
        for nbrs in &self.neighbors {
            *p.entry(nbrs.len()).or_insert(0) += 1;
        }
        p
    }

    /// All non-adjacent face pairs, lexicographically ordered.
    pub fn n2_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.m {
            for j in i + 1..self.m {
                if !self.are_adjacent(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The cubic 1-skeleton: rotation lists over the vertex set, with
    /// vertex `i` the i-th entry of [`Self::vertices`].
    pub fn vertex_graph(&self) -> Vec<Vec<usize>> {
        let verts = self.vertices();
        let index_of = |mut t: [usize; 3]| {
            t.sort_unstable();
            verts.binary_search(&t).unwrap()
        };
        let mut adj = Vec::with_capacity(verts.len());
        for tri in self.oriented_vertices() {
            let [i, j, k] = *tri;
            let mut nbrs = Vec::with_capacity(3);
            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                // the other vertex on the edge a∩b
                let mask = self.adj_mask[a] & self.adj_mask[b];
                let other = OmegaSubset(mask)
                    .iter()
                    .find(|&x| x != c && self.is_vertex([a, b, x]))
                    .expect("every edge has two endpoints");
                nbrs.push(index_of([a, b, other]));
            }
            adj.push(nbrs);
        }
        adj
    }

    /// The nerve complex K_P (dual triangulated 2-sphere).
    pub fn nerve(&self) -> NerveComplex {
        let edges = self.edges.clone();
        let eidx = |a: usize, b: usize| edges.binary_search(&(a.min(b), a.max(b))).unwrap();
        let mut edge_tris = vec![[usize::MAX; 2]; edges.len()];
        let mut tri_edges = Vec::with_capacity(self.vertices.len());
        for (j, t) in self.vertices.iter().enumerate() {
            let es = [eidx(t[1], t[2]), eidx(t[0], t[2]), eidx(t[0], t[1])];
            tri_edges.push(es);
            for e in es {
                if edge_tris[e][0] == usize::MAX {
                    edge_tris[e][0] = j;
                } else {
                    edge_tris[e][1] = j;
                }
            }
        }
        NerveComplex {
            m: self.m,
            edges,
            triangles: self.vertices.clone(),
            oriented_triangles: self.oriented_vertices.clone(),
            adj_mask: self.adj_mask.clone(),
            edge_tris,
            tri_edges,
        }
    }

    /// Canonical code (computed once, cached).
    pub fn canonical(&self) -> &CanonicalCode {
        self.canon.get_or_init(|| rotation::canonical_code(&self.neighbors))
    }

    /// Hex digest of the canonical code; stable file-naming key.
    pub fn canonical_hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        for x in &self.canonical().code {
            h.update(x.to_be_bytes());
        }
        let digest = h.finalize();
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Apply a face relabeling (face `i` becomes `perm[i]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        SimplePolytope3::new(rotation::relabel(&self.neighbors, perm))
    }

    /// Combinatorial equivalence test; returns one witness face bijection
    /// (`map[face_of_self] = face_of_other`) when equivalent.
    pub fn isomorphism(&self, other: &SimplePolytope3) -> Option<Vec<usize>> {
        if self.m != other.m {
            return None;
        }
        let a = self.canonical();
        let b = other.canonical();
        if a.code != b.code {
            return None;
        }
        let mut inv_b = vec![0usize; other.m];
        for (old, &new) in b.labeling.iter().enumerate() {
            inv_b[new] = old;
        }
        Some(a.labeling.iter().map(|&l| inv_b[l]).collect())
    }

    pub fn is_isomorphic(&self, other: &SimplePolytope3) -> bool {
        self.isomorphism(other).is_some()
    }
}

/// The nerve complex `K_P`: the simplicial 2-sphere dual to the boundary of
/// the polytope. Vertices are face labels, triangles are the vertices of
/// `P`. All full-subcomplex cohomology is computed on this complex.
#[derive(Clone, Debug)]
pub struct NerveComplex {
    m: usize,
    edges: Vec<(usize, usize)>,
    triangles: Vec<[usize; 3]>,
    oriented_triangles: Vec<[usize; 3]>,
    adj_mask: Vec<u32>,
    /// per-edge indices of the two incident triangles
    edge_tris: Vec<[usize; 2]>,
    /// per-triangle indices of its three edges (opposite vertex order)
    tri_edges: Vec<[usize; 3]>,
}

impl NerveComplex {
    pub fn vertex_count(&self) -> usize {
        self.m
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Triangles (sorted triples) in lexicographic order.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Triangles with coherent orientation from the embedding, ordered by
    /// their sorted counterpart.
    pub fn oriented_triangles(&self) -> &[[usize; 3]] {
        &self.oriented_triangles
    }

    pub fn adjacency_mask(&self, v: usize) -> u32 {
        self.adj_mask[v]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.adj_mask[i] >> j & 1 == 1
    }

    pub fn has_triangle(&self, mut t: [usize; 3]) -> bool {
        t.sort_unstable();
        self.triangles.binary_search(&t).is_ok()
    }

    /// Indices of the two triangles containing each edge.
    pub fn edge_triangles(&self) -> &[[usize; 2]] {
        &self.edge_tris
    }

    /// Edge indices of each triangle, ordered opposite to the vertices.
    pub fn triangle_edges(&self) -> &[[usize; 3]] {
        &self.tri_edges
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    /// Independent re-validation that this is a simplicial 2-sphere:
    /// connected, every edge in exactly two triangles, every vertex link a
    /// single cycle, Euler characteristic 2.
    pub fn validate_sphere(&self) -> Result<()> {
        let v = self.m as i64;
        let e = self.edges.len() as i64;
        let t = self.triangles.len() as i64;
        if v - e + t != 2 {
            return Err(PolyError::NotPolytopal(format!(
                "nerve has Euler characteristic {}",
                v - e + t
            )));
        }
        let mut edge_use: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for tri in &self.triangles {
            for (a, b) in [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])] {
                *edge_use.entry((a, b)).or_insert(0) += 1;
            }
        }
        for &(a, b) in &self.edges {
            if edge_use.get(&(a, b)) != Some(&2) {
                return Err(PolyError::NotPolytopal(format!(
                    "edge ({a},{b}) lies in {} triangles",
                    edge_use.get(&(a, b)).unwrap_or(&0)
                )));
            }
        }
        if edge_use.len() != self.edges.len() {
            return Err(PolyError::NotPolytopal(
                "triangle edge not in edge list".into(),
            ));
        }
        // vertex links are single cycles
        for v in 0..self.m {
            let incident: Vec<[usize; 3]> = self
                .triangles
                .iter()
                .copied()
                .filter(|t| t.contains(&v))
                .collect();
            let deg = (0..self.m).filter(|&u| self.has_edge(v, u)).count();
            if incident.len() != deg {
                return Err(PolyError::NotPolytopal(format!(
                    "link of vertex {v} is not a cycle"
                )));
            }
        }
        Ok(())
    }

    /// Restriction data of the full subcomplex on `omega`: (vertex count,
    /// edge count, triangle count).
    pub fn subcomplex_counts(&self, omega: OmegaSubset) -> (usize, usize, usize) {
        let v = omega.len();
        let e = self
            .edges
            .iter()
            .filter(|&&(a, b)| omega.contains(a) && omega.contains(b))
            .count();
        let t = self
            .triangles
            .iter()
            .filter(|t| t.iter().all(|&x| omega.contains(x)))
            .count();
        (v, e, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    #[test]
    fn cube_counts() {
        let cube = construct::cube();
        assert_eq!(cube.m(), 6);
        assert_eq!(cube.f0(), 8);
        assert_eq!(cube.f1(), 12);
        assert_eq!(cube.p_vector(), BTreeMap::from([(4, 6)]));
        assert_eq!(cube.n2_pairs().len(), 3);
    }

    #[test]
    fn tetrahedron_counts() {
        let t = construct::simplex();
        assert_eq!(t.m(), 4);
        assert_eq!(t.f0(), 4);
        assert_eq!(t.n2_pairs().len(), 0);
    }

    #[test]
    fn nerve_of_cube_is_octahedral_sphere() {
        let cube = construct::cube();
        let k = cube.nerve();
        assert_eq!(k.vertex_count(), 6);
        assert_eq!(k.edges().len(), 12);
        assert_eq!(k.triangles().len(), 8);
        k.validate_sphere().unwrap();
    }

    #[test]
    fn rejects_too_small() {
        let adj = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
        assert!(matches!(
            SimplePolytope3::new(adj),
            Err(PolyError::NotPolytopal(_))
        ));
    }

    #[test]
    fn isomorphism_under_relabeling() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let p = construct::permutohedron();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..p.m()).collect();
            perm.shuffle(&mut rng);
            let q = p.relabel(&perm).unwrap();
            let wit = p.isomorphism(&q).expect("relabeling must be isomorphic");
            // witness must be adjacency- and degree-preserving
            for (i, j) in p.edges().iter().copied() {
                assert!(q.are_adjacent(wit[i], wit[j]));
            }
            for f in 0..p.m() {
                assert_eq!(p.degree(f), q.degree(wit[f]));
            }
        }
    }

    #[test]
    fn different_polytopes_not_isomorphic() {
        assert!(!construct::cube().is_isomorphic(&construct::prism(5).unwrap()));
    }
}
