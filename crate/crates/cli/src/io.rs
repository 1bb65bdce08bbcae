//! Input resolution and output writing for the CLI.

use std::path::Path;

use polykit_core::codec;
use polykit_core::construct::{self, NamedObject};
use polykit_core::error::{PolyError, Result};
use polykit_core::SimplePolytope3;

/// Resolve an input argument: an existing `.poly` or planar-code file, or a
/// construction spec such as `pe3`, `prism:6`, `truncate-full:cube`,
/// `ideal:antiprism:4`.
pub fn load_polytope(input: &str) -> Result<SimplePolytope3> {
    let path = Path::new(input);
    if path.exists() {
        let bytes = std::fs::read(path)
            .map_err(|e| PolyError::MalformedInput(format!("{input}: {e}")))?;
        if bytes.starts_with(b">>planar_code<<") {
            let mut graphs = codec::parse_planar_code(&bytes)?;
            return graphs.pop().ok_or_else(|| {
                PolyError::MalformedInput(format!("{input}: empty planar-code stream"))
            });
        }
        let text = String::from_utf8(bytes)
            .map_err(|_| PolyError::MalformedInput(format!("{input}: not UTF-8")))?;
        return codec::parse_text(&text);
    }
    build_simple(input)
}

/// Build a simple polytope from a construction spec.
pub fn build_simple(spec: &str) -> Result<SimplePolytope3> {
    let lower = spec.to_ascii_lowercase();
    if let Some(rest) = lower.strip_prefix("truncate-full:") {
        let base = build_general(rest)?;
        return construct::truncate_full(&base);
    }
    if let Some(rest) = lower.strip_prefix("ideal:") {
        let quad = build_quad(rest)?;
        return construct::ideal_from_quadgraph(&quad);
    }
    match construct::make_named(construct::parse_named(&lower)?)? {
        NamedObject::Simple(p) => Ok(p),
        other => Err(PolyError::BadParameter(format!(
            "{spec} is not a simple polytope (got {})",
            match other {
                NamedObject::General(_) => "a general polytope",
                NamedObject::Quad(_) => "a quad graph",
                NamedObject::Simple(_) => unreachable!(),
            }
        ))),
    }
}

pub fn build_general(spec: &str) -> Result<polykit_core::GeneralPolytope3> {
    match construct::make_named(construct::parse_named(spec)?)? {
        NamedObject::General(g) => Ok(g),
        NamedObject::Simple(p) => {
            polykit_core::GeneralPolytope3::new(p.vertex_graph())
        }
        NamedObject::Quad(_) => Err(PolyError::BadParameter(format!(
            "{spec} is a quad graph, not a polytope"
        ))),
    }
}

pub fn build_quad(spec: &str) -> Result<polykit_core::QuadGraph> {
    match construct::make_named(construct::parse_named(spec)?)? {
        NamedObject::Quad(q) => Ok(q),
        _ => Err(PolyError::BadParameter(format!("{spec} is not a quad graph"))),
    }
}

/// Write a string to `--out` or stdout.
pub fn emit(out: &Option<std::path::PathBuf>, payload: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| PolyError::MalformedInput(format!("writing {path:?}: {e}"))),
        None => {
            println!("{payload}");
            Ok(())
        }
    }
}

/// Parse a comma-separated list of 1-based face ids.
pub fn parse_faces(arg: &Option<String>, m: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    if let Some(s) = arg {
        for tok in s.split(',') {
            let id: usize = tok
                .trim()
                .parse()
                .map_err(|_| PolyError::BadParameter(format!("bad face id {tok}")))?;
            if id == 0 || id > m {
                return Err(PolyError::BadParameter(format!(
                    "face id {id} out of range 1..={m}"
                )));
            }
            out.push(id - 1);
        }
    }
    Ok(out)
}
