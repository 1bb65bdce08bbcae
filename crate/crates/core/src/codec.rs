//! Serialization: the line-oriented `.poly` text format and the standard
//! planar-code binary stream.

use crate::error::{PolyError, Result};
use crate::polytope::SimplePolytope3;

/// Parse the text format:
///
/// ```text
/// polytope m=<int>
/// <face-id>: <cyclic neighbor list>
/// ```
///
/// Face ids are 1-based; `#` starts a comment.
pub fn parse_text(input: &str) -> Result<SimplePolytope3> {
    let mut lines = input
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| PolyError::MalformedInput("empty input".into()))?;
    let m: usize = header
        .strip_prefix("polytope")
        .map(str::trim)
        .and_then(|rest| rest.strip_prefix("m="))
        .ok_or_else(|| PolyError::MalformedInput(format!("bad header: {header}")))?
        .trim()
        .parse()
        .map_err(|_| PolyError::MalformedInput(format!("bad face count in: {header}")))?;
    let mut neighbors: Vec<Option<Vec<usize>>> = vec![None; m];
    for line in lines {
        let (id_part, rest) = line
            .split_once(':')
            .ok_or_else(|| PolyError::MalformedInput(format!("bad face line: {line}")))?;
        let id: usize = id_part
            .trim()
            .parse()
            .map_err(|_| PolyError::MalformedInput(format!("bad face id: {id_part}")))?;
        if id == 0 || id > m {
            return Err(PolyError::MalformedInput(format!(
                "face id {id} out of range 1..={m}"
            )));
        }
        let mut nbrs = Vec::new();
        for tok in rest.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| PolyError::MalformedInput(format!("bad neighbor: {tok}")))?;
            if v == 0 || v > m {
                return Err(PolyError::MalformedInput(format!(
                    "neighbor {v} out of range 1..={m}"
                )));
            }
            nbrs.push(v - 1);
        }
        if neighbors[id - 1].replace(nbrs).is_some() {
            return Err(PolyError::MalformedInput(format!("face {id} listed twice")));
        }
    }
    let neighbors: Vec<Vec<usize>> = neighbors
        .into_iter()
        .enumerate()
        .map(|(i, n)| n.ok_or_else(|| PolyError::MalformedInput(format!("face {} missing", i + 1))))
        .collect::<Result<_>>()?;
    SimplePolytope3::new(neighbors)
}

/// Write the text format (1-based face ids).
pub fn write_text(p: &SimplePolytope3) -> String {
    let mut out = format!("polytope m={}\n", p.m());
    for f in 0..p.m() {
        let nbrs: Vec<String> = p.neighbors(f).iter().map(|&x| (x + 1).to_string()).collect();
        out.push_str(&format!("{}: {}\n", f + 1, nbrs.join(" ")));
    }
    out
}

const PLANAR_CODE_HEADER: &[u8] = b">>planar_code<<";

/// Parse a planar-code stream of cubic planar graphs. Each graph is read as
/// the 1-skeleton of a simple polytope (vertices must be 3-valent); the
/// faces of the embedding become the polytope's faces.
pub fn parse_planar_code(bytes: &[u8]) -> Result<Vec<SimplePolytope3>> {
    let mut data = bytes;
    if data.starts_with(PLANAR_CODE_HEADER) {
        data = &data[PLANAR_CODE_HEADER.len()..];
        // optional byte-order suffix used by some generators
        if data.starts_with(b"le") || data.starts_with(b"be") {
            data = &data[2..];
        }
    }
    let mut out = Vec::new();
    let mut pos = 0usize;
    while pos < data.len() {
        let n = data[pos] as usize;
        pos += 1;
        if n == 0 {
            return Err(PolyError::MalformedInput(
                "16-bit planar code is not supported".into(),
            ));
        }
        let mut adj: Vec<Vec<usize>> = Vec::with_capacity(n);
        for v in 0..n {
            let mut nbrs = Vec::new();
            loop {
                if pos >= data.len() {
                    return Err(PolyError::MalformedInput(format!(
                        "truncated adjacency list for vertex {}",
                        v + 1
                    )));
                }
                let b = data[pos] as usize;
                pos += 1;
                if b == 0 {
                    break;
                }
                if b > n {
                    return Err(PolyError::MalformedInput(format!(
                        "neighbor {b} out of range 1..={n}"
                    )));
                }
                nbrs.push(b - 1);
            }
            adj.push(nbrs);
        }
        out.push(cubic_graph_to_polytope(adj)?);
    }
    Ok(out)
}

/// Interpret a cubic planar graph with rotation system as the 1-skeleton of
/// a simple 3-polytope.
pub fn cubic_graph_to_polytope(adj: Vec<Vec<usize>>) -> Result<SimplePolytope3> {
    for (v, nbrs) in adj.iter().enumerate() {
        if nbrs.len() != 3 {
            return Err(PolyError::NotSimple(format!(
                "vertex {} has valence {}",
                v + 1,
                nbrs.len()
            )));
        }
    }
    crate::rotation::check_rotation_system(&adj).map_err(PolyError::NotPolytopal)?;
    if !crate::rotation::is_connected(&adj) {
        return Err(PolyError::NotPolytopal("graph is disconnected".into()));
    }
    // trace faces of the embedding
    let n = adj.len();
    let mut face_of: std::collections::HashMap<(usize, usize), usize> =
        std::collections::HashMap::new();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        for &v in &adj[u] {
            if face_of.contains_key(&(u, v)) {
                continue;
            }
            let fid = faces.len();
            let mut walk = Vec::new();
            let (mut a, mut b) = (u, v);
            while !face_of.contains_key(&(a, b)) {
                face_of.insert((a, b), fid);
                walk.push(a);
                let p = adj[b].iter().position(|&w| w == a).unwrap();
                let w = adj[b][(p + 1) % adj[b].len()];
                a = b;
                b = w;
            }
            faces.push(walk);
        }
    }
    let vcount = n as i64;
    let ecount = adj.iter().map(|l| l.len()).sum::<usize>() as i64 / 2;
    let fcount = faces.len() as i64;
    if vcount - ecount + fcount != 2 {
        return Err(PolyError::NotPolytopal(format!(
            "embedding has Euler characteristic {}",
            vcount - ecount + fcount
        )));
    }
    // polytope faces = traced faces; neighbor rotation = faces across the
    // boundary edges in walk order
    let mut poly_adj: Vec<Vec<usize>> = Vec::with_capacity(faces.len());
    for (fid, walk) in faces.iter().enumerate() {
        let k = walk.len();
        let mut list = Vec::with_capacity(k);
        for i in 0..k {
            let a = walk[i];
            let b = walk[(i + 1) % k];
            let g = face_of[&(b, a)];
            if g == fid {
                return Err(PolyError::NotPolytopal(format!(
                    "edge ({a},{b}) has the same face on both sides"
                )));
            }
            list.push(g);
        }
        poly_adj.push(list);
    }
    SimplePolytope3::new(poly_adj)
}

/// Write polytopes as planar code (their cubic 1-skeletons with the
/// rotation systems induced by the face structure).
pub fn write_planar_code(polytopes: &[&SimplePolytope3]) -> Result<Vec<u8>> {
    let mut out = Vec::from(PLANAR_CODE_HEADER);
    for p in polytopes {
        let adj = p.vertex_graph();
        if adj.len() > 255 {
            return Err(PolyError::SizeBound(
                "planar code byte format supports at most 255 vertices".into(),
            ));
        }
        out.push(adj.len() as u8);
        for nbrs in &adj {
            for &u in nbrs {
                out.push(u as u8 + 1);
            }
            out.push(0);
        }
    }
    Ok(out)
}
