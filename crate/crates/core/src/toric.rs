//! Colorings, characteristic maps and face-ring presentations of the
//! canonical small covers and quasitoric manifolds.

use serde::Serialize;

use crate::error::{PolyError, Result};
use crate::polytope::SimplePolytope3;
use crate::scalar::{Coeff, Echelon, F2, Q};

/// A proper face coloring with colors `1..=max_color`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceColoring {
    pub colors: Vec<u8>,
    pub max_color: u8,
}

impl FaceColoring {
    pub fn is_proper(&self, p: &SimplePolytope3) -> bool {
        p.edges()
            .iter()
            .all(|&(a, b)| self.colors[a] != self.colors[b])
    }
}

/// Backtracking search for a proper coloring with the given number of
/// colors. Faces are ordered by decreasing degree, colors tried in fixed
/// order, so the result is deterministic.
fn color_search(p: &SimplePolytope3, max_color: u8) -> Option<Vec<u8>> {
    let m = p.m();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&f| std::cmp::Reverse(p.degree(f)));
    let mut colors = vec![0u8; m];

    fn assign(
        p: &SimplePolytope3,
        order: &[usize],
        idx: usize,
        max_color: u8,
        colors: &mut Vec<u8>,
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let f = order[idx];
        'next: for c in 1..=max_color {
            for &nb in p.neighbors(f) {
                if colors[nb] == c {
                    continue 'next;
                }
            }
            colors[f] = c;
            if assign(p, order, idx + 1, max_color, colors) {
                return true;
            }
            colors[f] = 0;
        }
        false
    }

    if assign(p, &order, 0, max_color, &mut colors) {
        Some(colors)
    } else {
        None
    }
}

/// Count all proper colorings with colors `1..=max_color` (labelled count).
pub fn count_colorings(p: &SimplePolytope3, max_color: u8) -> u64 {
    fn walk(p: &SimplePolytope3, f: usize, max_color: u8, colors: &mut Vec<u8>) -> u64 {
        if f == p.m() {
            return 1;
        }
        let mut total = 0;
        'next: for c in 1..=max_color {
            for &nb in p.neighbors(f) {
                if colors[nb] == c {
                    continue 'next;
                }
            }
            colors[f] = c;
            total += walk(p, f + 1, max_color, colors);
            colors[f] = 0;
        }
        total
    }
    let mut colors = vec![0u8; p.m()];
    walk(p, 0, max_color, &mut colors)
}

/// A proper 4-coloring (exists by the Four Color Theorem).
pub fn four_coloring(p: &SimplePolytope3) -> Result<FaceColoring> {
    match color_search(p, 4) {
        Some(colors) => Ok(FaceColoring { colors, max_color: 4 }),
        None => Err(PolyError::SearchExhausted(
            "no proper 4-coloring found; this contradicts the four color theorem".into(),
        )),
    }
}

/// A proper 3-coloring: exists exactly for even polytopes (every face with
/// an even number of edges), and is then unique up to a permutation of the
/// colors, which is verified exhaustively.
pub fn three_coloring(p: &SimplePolytope3) -> Result<FaceColoring> {
    if (0..p.m()).any(|f| p.degree(f) % 2 == 1) {
        return Err(PolyError::NotEvenPolytope);
    }
    let colors = color_search(p, 3).ok_or_else(|| {
        PolyError::SearchExhausted("even polytope without a 3-coloring".into())
    })?;
    let total = count_colorings(p, 3);
    if total != 6 {
        return Err(PolyError::SearchExhausted(format!(
            "expected a unique 3-coloring up to permutation, found {total} colorings"
        )));
    }
    Ok(FaceColoring { colors, max_color: 3 })
}

/// Coefficient mode of a characteristic map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CharMode {
    Integer,
    F2,
}

/// An m-column matrix over Z^3 (or Z_2^3) assigning a vector to each face,
/// with the basis condition holding at every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacteristicMap {
    pub cols: Vec<[i64; 3]>,
    pub mode: CharMode,
}

fn det3(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

impl CharacteristicMap {
    pub fn new(cols: Vec<[i64; 3]>, mode: CharMode, p: &SimplePolytope3) -> Result<Self> {
        let map = CharacteristicMap { cols, mode };
        map.validate(p)?;
        Ok(map)
    }

    /// Check the basis condition at every vertex.
    pub fn validate(&self, p: &SimplePolytope3) -> Result<()> {
        if self.cols.len() != p.m() {
            return Err(PolyError::InvalidCharacteristic(format!(
                "expected {} columns, got {}",
                p.m(),
                self.cols.len()
            )));
        }
        for v in p.vertices() {
            let d = det3(self.cols[v[0]], self.cols[v[1]], self.cols[v[2]]);
            let ok = match self.mode {
                CharMode::Integer => d == 1 || d == -1,
                CharMode::F2 => d.rem_euclid(2) == 1,
            };
            if !ok {
                return Err(PolyError::InvalidCharacteristic(format!(
                    "columns at vertex {v:?} have determinant {d}"
                )));
            }
        }
        Ok(())
    }

    /// Reduce modulo two.
    pub fn to_f2(&self) -> CharacteristicMap {
        CharacteristicMap {
            cols: self
                .cols
                .iter()
                .map(|c| [c[0].rem_euclid(2), c[1].rem_euclid(2), c[2].rem_euclid(2)])
                .collect(),
            mode: CharMode::F2,
        }
    }
}

/// The characteristic map of a proper coloring: colors 1..3 map to basis
/// vectors, color 4 to their sum.
pub fn lambda_from_coloring(
    p: &SimplePolytope3,
    coloring: &FaceColoring,
) -> Result<CharacteristicMap> {
    let e = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]];
    let cols: Vec<[i64; 3]> = coloring
        .colors
        .iter()
        .map(|&c| e[(c - 1) as usize])
        .collect();
    CharacteristicMap::new(cols, CharMode::Integer, p)
}

/// The canonical characteristic map of an even polytope: the 3-coloring
/// with the quadrangles in the third color (when the quadrangles are a
/// monochromatic proper subset, as they are for ideal almost Pogorelov
/// polytopes).
pub fn canonical_lambda(p: &SimplePolytope3) -> Result<CharacteristicMap> {
    let mut coloring = three_coloring(p)?;
    let quads: Vec<usize> = (0..p.m()).filter(|&f| p.degree(f) == 4).collect();
    if !quads.is_empty() && quads.len() < p.m() {
        let qcolors: Vec<u8> = quads.iter().map(|&f| coloring.colors[f]).collect();
        let qc = qcolors[0];
        if qcolors.iter().all(|&c| c == qc) && qc != 3 {
            for c in coloring.colors.iter_mut() {
                if *c == qc {
                    *c = 3;
                } else if *c == 3 {
                    *c = qc;
                }
            }
        }
    }
    lambda_from_coloring(p, &coloring)
}

/// Presentation data of the face ring modulo the characteristic ideal.
#[derive(Clone, Debug, Serialize)]
pub struct FaceRingPresentation {
    /// number of generators (one per face), of the stated degree
    pub generators: usize,
    pub generator_degree: usize,
    /// Stanley-Reisner generators: the minimal non-faces (size 2 and 3)
    pub non_face_pairs: Vec<(usize, usize)>,
    pub non_face_triples: Vec<[usize; 3]>,
    /// the three linear forms, as coefficient rows
    pub linear_forms: Vec<Vec<i64>>,
}

pub fn face_ring_presentation(
    p: &SimplePolytope3,
    lambda: &CharacteristicMap,
    generator_degree: usize,
) -> FaceRingPresentation {
    let non_face_pairs = p.n2_pairs();
    let non_face_triples: Vec<[usize; 3]> = crate::belts::enumerate_belts(p, 3)
        .into_iter()
        .map(|b| [b.faces[0], b.faces[1], b.faces[2]])
        .collect();
    let linear_forms = (0..3)
        .map(|r| (0..p.m()).map(|i| lambda.cols[i][r]).collect())
        .collect();
    FaceRingPresentation {
        generators: p.m(),
        generator_degree,
        non_face_pairs,
        non_face_triples,
        linear_forms,
    }
}

/// Computation mode for the quotient dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FaceRingMode {
    SmallCoverZ2,
    QuasitoricZ,
    QuasitoricZ2,
}

/// Monomials of v-degree <= 3 supported on faces of the nerve, as sorted
/// multisets of face indices.
fn face_monomials(p: &SimplePolytope3, d: usize) -> Vec<Vec<usize>> {
    let m = p.m();
    let mut out = Vec::new();
    match d {
        0 => out.push(Vec::new()),
        1 => {
            for i in 0..m {
                out.push(vec![i]);
            }
        }
        2 => {
            for i in 0..m {
                out.push(vec![i, i]);
            }
            for &(a, b) in p.edges() {
                out.push(vec![a, b]);
            }
        }
        3 => {
            for i in 0..m {
                out.push(vec![i, i, i]);
            }
            for &(a, b) in p.edges() {
                out.push(vec![a, a, b]);
                out.push(vec![a, b, b]);
            }
            for v in p.vertices() {
                out.push(v.to_vec());
            }
        }
        _ => panic!("face ring dimensions are only needed for v-degree <= 3"),
    }
    out.sort();
    out
}

/// Is the support of the multiset a face of the nerve?
fn is_face_supported(p: &SimplePolytope3, mono: &[usize]) -> bool {
    let mut support = mono.to_vec();
    support.dedup();
    match support.len() {
        0 | 1 => true,
        2 => p.are_adjacent(support[0], support[1]),
        3 => p.is_vertex([support[0], support[1], support[2]]),
        _ => false,
    }
}

fn quotient_dims_over<S: Coeff>(p: &SimplePolytope3, lambda: &CharacteristicMap) -> Vec<i64> {
    let mut dims = Vec::with_capacity(4);
    for d in 0..=3usize {
        let basis = face_monomials(p, d);
        if d == 0 {
            dims.push(1);
            continue;
        }
        let lower = face_monomials(p, d - 1);
        let mut elim: Echelon<S> = Echelon::new();
        let mut rank = 0i64;
        for mono in &lower {
            for r in 0..3 {
                let mut row = vec![S::zero(); basis.len()];
                let mut nonzero = false;
                for i in 0..p.m() {
                    let coeff = lambda.cols[i][r];
                    if coeff == 0 {
                        continue;
                    }
                    let mut prod = mono.clone();
                    prod.push(i);
                    prod.sort_unstable();
                    if !is_face_supported(p, &prod) {
                        continue;
                    }
                    if let Ok(idx) = basis.binary_search(&prod) {
                        row[idx] = row[idx].add(&S::from_int(coeff));
                        nonzero = true;
                    }
                }
                if nonzero && elim.insert(row, None) {
                    rank += 1;
                }
            }
        }
        dims.push(basis.len() as i64 - rank);
    }
    dims
}

/// Graded dimensions (in v-degree 0..=3) of the face ring modulo the ideal
/// of the characteristic map. Poincare duality of the result is asserted.
pub fn face_ring_dims(
    p: &SimplePolytope3,
    lambda: &CharacteristicMap,
    mode: FaceRingMode,
) -> Result<Vec<i64>> {
    lambda.validate(p)?;
    let dims = match mode {
        FaceRingMode::SmallCoverZ2 | FaceRingMode::QuasitoricZ2 => {
            quotient_dims_over::<F2>(p, &lambda.to_f2())
        }
        FaceRingMode::QuasitoricZ => {
            let over_q = quotient_dims_over::<Q>(p, lambda);
            let over_f2 = quotient_dims_over::<F2>(p, &lambda.to_f2());
            if over_q != over_f2 {
                return Err(PolyError::TorsionDetected(format!(
                    "quasitoric dimensions differ between Q {over_q:?} and Z2 {over_f2:?}"
                )));
            }
            over_q
        }
    };
    if dims[0] != dims[3] || dims[1] != dims[2] {
        return Err(PolyError::InvalidCharacteristic(format!(
            "face ring dimensions {dims:?} violate Poincare duality"
        )));
    }
    Ok(dims)
}

/// Are two (polytope, Z2 characteristic map) pairs equivalent: is there a
/// combinatorial equivalence and a change of basis matching all columns?
pub fn pairs_z2_equivalent(
    p: &SimplePolytope3,
    lp: &CharacteristicMap,
    q: &SimplePolytope3,
    lq: &CharacteristicMap,
) -> Result<bool> {
    lp.validate(p)?;
    lq.validate(q)?;
    if p.m() != q.m() {
        return Ok(false);
    }
    let isos = all_isomorphisms(p, q);
    if isos.is_empty() {
        return Ok(false);
    }
    let colp: Vec<[i64; 3]> = lp.to_f2().cols;
    let colq: Vec<[i64; 3]> = lq.to_f2().cols;
    // determine the change of basis from one vertex, verify everywhere
    let v = p.vertices()[0];
    for phi in isos {
        let b = [colp[v[0]], colp[v[1]], colp[v[2]]];
        let b_img = [colq[phi[v[0]]], colq[phi[v[1]]], colq[phi[v[2]]]];
        let binv = match f2_inv3(b) {
            None => continue,
            Some(x) => x,
        };
        let c = f2_mul3(b_img, binv);
        let ok = (0..p.m()).all(|i| f2_apply(c, colp[i]) == colq[phi[i]]);
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All combinatorial equivalences `p -> q` as face bijections.
pub fn all_isomorphisms(p: &SimplePolytope3, q: &SimplePolytope3) -> Vec<Vec<usize>> {
    if p.m() != q.m() || p.canonical().code != q.canonical().code {
        return Vec::new();
    }
    let target = &p.canonical().code;
    let base = &p.canonical().labeling;
    let mut out = Vec::new();
    // every rooted traversal of q attaining the canonical code gives one
    for root in 0..q.m() {
        for start in 0..q.degree(root) {
            for reverse in [false, true] {
                let code =
                    crate::rotation::rooted_code(q.all_neighbors(), root, start, reverse);
                if &code.code == target {
                    let mut inv = vec![0usize; q.m()];
                    for (old, &label) in code.labeling.iter().enumerate() {
                        inv[label] = old;
                    }
                    let iso: Vec<usize> = base.iter().map(|&l| inv[l]).collect();
                    if !out.contains(&iso) {
                        out.push(iso);
                    }
                }
            }
        }
    }
    out
}

type M3 = [[i64; 3]; 3]; // row-major over F2

fn f2_inv3(cols: [[i64; 3]; 3]) -> Option<M3> {
    // matrix with the given columns, over F2
    let mut a = [[0i64; 6]; 3];
    for r in 0..3 {
        for (c, col) in cols.iter().enumerate() {
            a[r][c] = col[r].rem_euclid(2);
        }
        a[r][r + 3] = 1;
    }
    for col in 0..3 {
        let pivot = (col..3).find(|&r| a[r][col] == 1)?;
        a.swap(col, pivot);
        for r in 0..3 {
            if r != col && a[r][col] == 1 {
                for c in 0..6 {
                    a[r][c] ^= a[col][c];
                }
            }
        }
    }
    let mut inv = [[0i64; 3]; 3];
    for (r, row) in inv.iter_mut().enumerate() {
        for (c, x) in row.iter_mut().enumerate() {
            *x = a[r][c + 3];
        }
    }
    Some(inv)
}

fn f2_mul3(cols: [[i64; 3]; 3], rhs: M3) -> M3 {
    // left factor given by columns, right factor row-major; result row-major
    let mut left = [[0i64; 3]; 3];
    for r in 0..3 {
        for (c, col) in cols.iter().enumerate() {
            left[r][c] = col[r].rem_euclid(2);
        }
    }
    let mut out = [[0i64; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            let mut acc = 0;
            for k in 0..3 {
                acc ^= left[r][k] & rhs[k][c];
            }
            out[r][c] = acc;
        }
    }
    out
}

fn f2_apply(mat: M3, v: [i64; 3]) -> [i64; 3] {
    let mut out = [0i64; 3];
    for (r, slot) in out.iter_mut().enumerate() {
        let mut acc = 0;
        for k in 0..3 {
            acc ^= mat[r][k] & v[k].rem_euclid(2);
        }
        *slot = acc;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    #[test]
    fn cube_three_coloring() {
        let p = construct::cube();
        let c = three_coloring(&p).unwrap();
        assert!(c.is_proper(&p));
        assert_eq!(count_colorings(&p, 3), 6);
    }

    #[test]
    fn pe3_three_coloring_unique() {
        let p = construct::permutohedron();
        let c = three_coloring(&p).unwrap();
        assert!(c.is_proper(&p));
        assert_eq!(count_colorings(&p, 3), 6);
    }

    #[test]
    fn as3_is_not_even() {
        assert!(matches!(
            three_coloring(&construct::associahedron()),
            Err(PolyError::NotEvenPolytope)
        ));
    }

    #[test]
    fn four_coloring_everywhere() {
        for p in [
            construct::simplex(),
            construct::associahedron(),
            construct::dodecahedron(),
            construct::p8(),
        ] {
            let c = four_coloring(&p).unwrap();
            assert!(c.is_proper(&p));
            let lambda = lambda_from_coloring(&p, &c).unwrap();
            lambda.validate(&p).unwrap();
            lambda.to_f2().validate(&p).unwrap();
        }
    }

    #[test]
    fn canonical_lambda_of_pe3() {
        let p = construct::permutohedron();
        let lambda = canonical_lambda(&p).unwrap();
        // 6 quadrangle columns must be e3, the rest e1/e2
        let mut e3 = 0;
        for (f, col) in lambda.cols.iter().enumerate() {
            if p.degree(f) == 4 {
                assert_eq!(*col, [0, 0, 1]);
                e3 += 1;
            } else {
                assert!(*col == [1, 0, 0] || *col == [0, 1, 0]);
            }
        }
        assert_eq!(e3, 6);
    }

    #[test]
    fn cube_small_cover_is_three_torus() {
        let p = construct::cube();
        let lambda = canonical_lambda(&p).unwrap();
        let dims = face_ring_dims(&p, &lambda, FaceRingMode::SmallCoverZ2).unwrap();
        assert_eq!(dims, vec![1, 3, 3, 1]);
    }

    #[test]
    fn degree_one_dimension_is_m_minus_3() {
        for p in [construct::cube(), construct::permutohedron()] {
            let lambda = canonical_lambda(&p).unwrap();
            for mode in [
                FaceRingMode::SmallCoverZ2,
                FaceRingMode::QuasitoricZ,
                FaceRingMode::QuasitoricZ2,
            ] {
                let dims = face_ring_dims(&p, &lambda, mode).unwrap();
                assert_eq!(dims[0], 1);
                assert_eq!(dims[1], p.m() as i64 - 3);
                assert_eq!(dims[1], dims[2]);
                assert_eq!(dims[3], 1);
            }
        }
    }

    #[test]
    fn z2_equivalence_of_relabeled_pairs() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let p = construct::permutohedron();
        let lambda = canonical_lambda(&p).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let mut perm: Vec<usize> = (0..p.m()).collect();
        perm.shuffle(&mut rng);
        let q = p.relabel(&perm).unwrap();
        let mut cols = vec![[0i64; 3]; q.m()];
        for (i, &pi) in perm.iter().enumerate() {
            cols[pi] = lambda.cols[i];
        }
        let lq = CharacteristicMap::new(cols, CharMode::Integer, &q).unwrap();
        assert!(pairs_z2_equivalent(&p, &lambda, &q, &lq).unwrap());

        // swapping two colors is a change of basis
        let swapped: Vec<[i64; 3]> = lambda.cols.iter().map(|c| [c[1], c[0], c[2]]).collect();
        let lp2 = CharacteristicMap::new(swapped, CharMode::Integer, &p).unwrap();
        assert!(pairs_z2_equivalent(&p, &lambda, &p, &lp2).unwrap());

        // different polytopes are never equivalent
        let c = construct::cube();
        let lc = canonical_lambda(&c).unwrap();
        assert!(!pairs_z2_equivalent(&c, &lc, &p, &lambda).unwrap());
    }
}
