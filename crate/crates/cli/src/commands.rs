//! Subcommand implementations.

use std::collections::BTreeMap;
use std::path::Path;

use polykit_core::belts;
use polykit_core::codec;
use polykit_core::cohomology::{a3_report, bk_rank, i7_report, RankEngine};
use polykit_core::corpus;
use polykit_core::error::{PolyError, Result};
use polykit_core::jsonout;
use polykit_core::rigidity::{self, Criterion};
use polykit_core::toric;
use polykit_core::SimplePolytope3;
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::io;
use crate::{Cli, Command};

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Construct { spec, out_dir, planar_code } => {
            construct_cmd(cli, spec, out_dir, *planar_code)
        }
        Command::Classify { input } => classify_cmd(cli, input),
        Command::Belts { input, k, through, forbidden } => {
            belts_cmd(cli, input, *k, through, forbidden)
        }
        Command::Invariants { input, bigraded, csv } => {
            invariants_cmd(cli, input, *bigraded, csv)
        }
        Command::Toric { input, mode } => toric_cmd(cli, input, mode),
        Command::Verify { criterion, corpus } => verify_cmd(cli, criterion, corpus),
        Command::Compare { a, b } => compare_cmd(cli, a, b),
        Command::Fingerprint { input } => fingerprint_cmd(cli, input),
        Command::Cache { action } => cache_cmd(cli, action),
    }
}

fn write_snapshot(
    dir: &Path,
    family: &str,
    params: &str,
    p: &SimplePolytope3,
) -> Result<std::path::PathBuf> {
    std::fs::create_dir_all(dir)
        .map_err(|e| PolyError::MalformedInput(format!("{dir:?}: {e}")))?;
    let name = if params.is_empty() {
        format!("{family}-{}.poly", p.canonical_hash())
    } else {
        format!("{family}-{params}-{}.poly", p.canonical_hash())
    };
    let path = dir.join(name);
    std::fs::write(&path, codec::write_text(p))
        .map_err(|e| PolyError::MalformedInput(format!("{path:?}: {e}")))?;
    Ok(path)
}

fn construct_cmd(cli: &Cli, spec: &str, out_dir: &Path, planar_code: bool) -> Result<()> {
    let lower = spec.to_ascii_lowercase();
    let mut built: Vec<(String, String, SimplePolytope3)> = Vec::new();
    if let Some(rest) = lower.strip_prefix("exhaustive:") {
        let max_m: usize = rest
            .parse()
            .map_err(|_| PolyError::BadParameter(format!("bad bound in {spec}")))?;
        for p in corpus::exhaustive_simple(max_m) {
            built.push(("simple".into(), format!("m{}", p.m()), p));
        }
    } else if let Some(rest) = lower.strip_prefix("apog:") {
        let (m_part, cap_part) = rest
            .split_once(':')
            .ok_or_else(|| PolyError::BadParameter(format!("{spec}: expected apog:M:CAP")))?;
        let max_m: usize = m_part
            .parse()
            .map_err(|_| PolyError::BadParameter(format!("bad bound in {spec}")))?;
        let cap: usize = cap_part
            .parse()
            .map_err(|_| PolyError::BadParameter(format!("bad cap in {spec}")))?;
        for p in corpus::apog_family_from_as3(max_m, cap) {
            built.push(("apog".into(), format!("m{}", p.m()), p));
        }
    } else {
        let p = io::build_simple(&lower)?;
        let family = lower.replace(':', "-");
        built.push((family, String::new(), p));
    }
    let mut paths = Vec::new();
    for (family, params, p) in &built {
        paths.push(write_snapshot(out_dir, family, params, p)?);
    }
    if planar_code {
        let refs: Vec<&SimplePolytope3> = built.iter().map(|(_, _, p)| p).collect();
        let bytes = codec::write_planar_code(&refs)?;
        let path = out_dir.join(format!("{}.plc", lower.replace(':', "-")));
        std::fs::write(&path, bytes)
            .map_err(|e| PolyError::MalformedInput(format!("{path:?}: {e}")))?;
        paths.push(path);
    }
    let payload = json!({
        "written": paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        "count": built.len(),
    });
    io::emit(&cli.out, &jsonout::to_canonical_string(&payload))
}

fn classify_cmd(cli: &Cli, input: &str) -> Result<()> {
    let p = io::load_polytope(input)?;
    let evidence = belts::classify(&p);
    match cli.format.as_str() {
        "text" => io::emit(&cli.out, &format!("{:?}", evidence.class)),
        _ => {
            let payload = json!({
                "class": format!("{:?}", evidence.class),
                "m": p.m(),
                "four_belt_count": evidence.four_belt_count,
                "witness_belt": evidence
                    .witness_belt
                    .as_ref()
                    .map(|b| faces_1based(&b.faces)),
                "vertex_quadrangle_counts": evidence.vertex_quad_counts,
                "canonical_hash": p.canonical_hash(),
            });
            io::emit(&cli.out, &jsonout::to_canonical_string(&payload))
        }
    }
}

fn faces_1based(faces: &[usize]) -> Vec<usize> {
    faces.iter().map(|f| f + 1).collect()
}

fn belts_cmd(
    cli: &Cli,
    input: &str,
    k: Option<usize>,
    through: &Option<String>,
    forbidden: &Option<String>,
) -> Result<()> {
    let p = io::load_polytope(input)?;
    let through = io::parse_faces(through, p.m())?;
    let forbidden = io::parse_faces(forbidden, p.m())?;
    let found: Vec<belts::Belt> = if through.is_empty() && forbidden.is_empty() {
        match k {
            Some(k) => belts::enumerate_belts(&p, k),
            None => (3..=p.m()).flat_map(|k| belts::enumerate_belts(&p, k)).collect(),
        }
    } else {
        belts::belts_through(&p, &through, &forbidden, k)
            .into_iter()
            .filter(|b| k.is_none_or(|k| b.len() == k))
            .collect()
    };
    // JSON-lines evidence records
    let mut lines = Vec::new();
    for belt in &found {
        let record = json!({
            "k": belt.len(),
            "faces": faces_1based(&belt.faces),
            "trivial": belt.is_trivial(&p),
            "surrounds": faces_1based(&belt.surrounded_faces(&p)),
        });
        lines.push(serde_json::to_string(&record).expect("serializable"));
    }
    io::emit(&cli.out, &lines.join("\n"))
}

fn invariants_value(p: &SimplePolytope3, bigraded: bool) -> Value {
    let engine = RankEngine::new(p);
    let m = p.m();
    let betti: Vec<i64> = (0..=m + 3).map(|k| engine.table.h_rank(k)).collect();
    let a3 = a3_report(&engine);
    let i7 = i7_report(&engine);
    let mut belt_ranks = BTreeMap::new();
    for k in 3..=m.saturating_sub(2) {
        let r = bk_rank(&engine, k);
        if r != 0 {
            belt_ranks.insert(k.to_string(), r);
        }
    }
    let mut payload = json!({
        "m": m,
        "canonical_hash": p.canonical_hash(),
        "p_vector": p.p_vector().into_iter().map(|(k, v)| (k.to_string(), v)).collect::<BTreeMap<_, _>>(),
        "betti": betti,
        "n2_size": a3.n2_size,
        "pairing_rank": a3.pairing_rank,
        "a3_rank": a3.a3_rank,
        "combinatorial_a3_rank": a3.combinatorial_a3_rank,
        "i7_rank_q": i7.rank_q,
        "i7_rank_f2": i7.rank_f2,
        "belt_ranks": belt_ranks,
    });
    if bigraded {
        let mut cells = BTreeMap::new();
        for j in 0..=m {
            for i in 0..=m {
                let r = engine.table.bigraded(i, j);
                if r != 0 {
                    cells.insert(format!("{i},{j}"), r);
                }
            }
        }
        payload["bigraded"] = json!(cells);
    }
    payload
}

fn invariants_cmd(
    cli: &Cli,
    input: &str,
    bigraded: bool,
    csv: &Option<std::path::PathBuf>,
) -> Result<()> {
    let p = io::load_polytope(input)?;
    if p.m() > cli.max_m {
        return Err(PolyError::SizeBound(format!(
            "m = {} exceeds --max-m {}",
            p.m(),
            cli.max_m
        )));
    }
    let cache = Cache::resolve(&cli.cache_dir);
    let params = format!("bigraded={bigraded}");
    let payload = if let Some(hit) = cache
        .as_ref()
        .and_then(|c| c.get(&p.canonical_hash(), "invariants", &params))
    {
        serde_json::from_str(&hit).expect("cached canonical JSON")
    } else {
        let value = invariants_value(&p, bigraded);
        if let Some(c) = &cache {
            c.put(
                &p.canonical_hash(),
                "invariants",
                &params,
                &codec::write_text(&p),
                &value,
            );
        }
        value
    };
    if let Some(csv_path) = csv {
        let engine = RankEngine::new(&p);
        let mut rows = String::from("i,j,rank\n");
        for j in 0..=p.m() {
            for i in 0..=p.m() {
                let r = engine.table.bigraded(i, j);
                if r != 0 {
                    rows.push_str(&format!("{i},{j},{r}\n"));
                }
            }
        }
        std::fs::write(csv_path, rows)
            .map_err(|e| PolyError::MalformedInput(format!("{csv_path:?}: {e}")))?;
    }
    io::emit(&cli.out, &jsonout::to_canonical_string(&payload))
}

fn toric_cmd(cli: &Cli, input: &str, mode: &str) -> Result<()> {
    let p = io::load_polytope(input)?;
    let lambda = toric::canonical_lambda(&p)?;
    let ring_mode = match mode {
        "small-cover" => toric::FaceRingMode::SmallCoverZ2,
        "quasitoric" => toric::FaceRingMode::QuasitoricZ,
        _ => toric::FaceRingMode::QuasitoricZ2,
    };
    let generator_degree = if matches!(ring_mode, toric::FaceRingMode::SmallCoverZ2) {
        1
    } else {
        2
    };
    let dims = toric::face_ring_dims(&p, &lambda, ring_mode)?;
    let presentation = toric::face_ring_presentation(&p, &lambda, generator_degree);
    let payload = json!({
        "m": p.m(),
        "mode": mode,
        "lambda": lambda.cols,
        "graded_dims": dims,
        "generators": presentation.generators,
        "generator_degree": presentation.generator_degree,
        "non_face_pairs": presentation
            .non_face_pairs
            .iter()
            .map(|&(a, b)| vec![a + 1, b + 1])
            .collect::<Vec<_>>(),
        "non_face_triples": presentation
            .non_face_triples
            .iter()
            .map(|t| faces_1based(t))
            .collect::<Vec<_>>(),
        "linear_forms": presentation.linear_forms,
    });
    io::emit(&cli.out, &jsonout::to_canonical_string(&payload))
}

fn load_corpus(spec: &str) -> Result<Vec<(String, SimplePolytope3)>> {
    let lower = spec.to_ascii_lowercase();
    if lower == "named" {
        return Ok(corpus::named_corpus());
    }
    if let Some(rest) = lower.strip_prefix("exhaustive:") {
        let max_m: usize = rest
            .parse()
            .map_err(|_| PolyError::BadParameter(format!("bad bound in {spec}")))?;
        return Ok(corpus::exhaustive_simple(max_m)
            .into_iter()
            .map(|p| (format!("m{}-{}", p.m(), p.canonical_hash()), p))
            .collect());
    }
    if let Some(rest) = lower.strip_prefix("apog:") {
        let (m_part, cap_part) = rest
            .split_once(':')
            .ok_or_else(|| PolyError::BadParameter(format!("{spec}: expected apog:M:CAP")))?;
        let max_m: usize = m_part.parse().map_err(|_| {
            PolyError::BadParameter(format!("bad bound in {spec}"))
        })?;
        let cap: usize = cap_part
            .parse()
            .map_err(|_| PolyError::BadParameter(format!("bad cap in {spec}")))?;
        return Ok(corpus::apog_family_from_as3(max_m, cap)
            .into_iter()
            .map(|p| (format!("apog-m{}-{}", p.m(), p.canonical_hash()), p))
            .collect());
    }
    // a directory of .poly files
    let dir = Path::new(spec);
    if dir.is_dir() {
        let mut out = Vec::new();
        let mut entries: Vec<_> = std::fs::read_dir(dir)
            .map_err(|e| PolyError::MalformedInput(format!("{spec}: {e}")))?
            .filter_map(|e| e.ok())
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|x| x == "poly"))
            .collect();
        entries.sort();
        for path in entries {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| PolyError::MalformedInput(format!("{path:?}: {e}")))?;
            out.push((
                path.file_stem().unwrap().to_string_lossy().to_string(),
                codec::parse_text(&text)?,
            ));
        }
        return Ok(out);
    }
    Err(PolyError::BadParameter(format!(
        "unknown corpus {spec}; expected named, exhaustive:M, apog:M:CAP or a directory"
    )))
}

fn verify_cmd(cli: &Cli, criterion: &str, corpus_spec: &str) -> Result<()> {
    let criterion = Criterion::parse(criterion)?;
    let members = load_corpus(corpus_spec)?;
    let mut disagreements = Vec::new();
    let mut reports = Vec::new();
    for (name, p) in &members {
        if p.m() > cli.max_m {
            continue;
        }
        // the flag-H4 equivalence excludes the simplex by hypothesis
        if matches!(criterion, Criterion::FlagH4) && p.m() == 4 {
            continue;
        }
        let report = rigidity::verify_criterion(p, criterion);
        if !report.agree {
            disagreements.push(name.clone());
        }
        reports.push(json!({
            "name": name,
            "m": report.m,
            "combinatorial_side": report.combinatorial_side,
            "algebraic_side": report.algebraic_side,
            "agree": report.agree,
            "numbers": report.numbers,
        }));
    }
    let payload = json!({
        "criterion": format!("{criterion:?}"),
        "members": reports.len(),
        "disagreements": disagreements,
        "reports": reports,
    });
    io::emit(&cli.out, &jsonout::to_canonical_string(&payload))?;
    if payload["disagreements"].as_array().is_some_and(|a| !a.is_empty()) {
        return Err(PolyError::PreconditionViolated(format!(
            "criterion {criterion:?} has disagreements"
        )));
    }
    Ok(())
}

fn compare_cmd(cli: &Cli, a: &str, b: &str) -> Result<()> {
    let pa = io::load_polytope(a)?;
    let pb = io::load_polytope(b)?;
    let iso = pa.isomorphism(&pb);
    let fp_equal = if pa.m() == pb.m() && pa.m() <= cli.max_m {
        let fa = rigidity::fingerprint(&pa, cli.max_m)?;
        let fb = rigidity::fingerprint(&pb, cli.max_m)?;
        Some(fa == fb)
    } else {
        None
    };
    let payload = json!({
        "isomorphic": iso.is_some(),
        "witness": iso.map(|w| w.iter().map(|x| x + 1).collect::<Vec<_>>()),
        "fingerprints_equal": fp_equal,
        "a": {"m": pa.m(), "hash": pa.canonical_hash()},
        "b": {"m": pb.m(), "hash": pb.canonical_hash()},
    });
    io::emit(&cli.out, &jsonout::to_canonical_string(&payload))
}

fn fingerprint_cmd(cli: &Cli, input: &str) -> Result<()> {
    let p = io::load_polytope(input)?;
    let cache = Cache::resolve(&cli.cache_dir);
    let params = format!("max_m={}", cli.max_m);
    let payload = if let Some(hit) = cache
        .as_ref()
        .and_then(|c| c.get(&p.canonical_hash(), "fingerprint", &params))
    {
        serde_json::from_str(&hit).expect("cached canonical JSON")
    } else {
        let fp = rigidity::fingerprint(&p, cli.max_m)?;
        let value = serde_json::to_value(&fp).expect("serializable");
        if let Some(c) = &cache {
            c.put(
                &p.canonical_hash(),
                "fingerprint",
                &params,
                &codec::write_text(&p),
                &value,
            );
        }
        value
    };
    io::emit(&cli.out, &jsonout::to_canonical_string(&payload))
}

fn cache_cmd(cli: &Cli, action: &str) -> Result<()> {
    let cache = Cache::resolve(&cli.cache_dir).ok_or_else(|| {
        PolyError::BadParameter("no cache directory (use --cache-dir or POLYKIT_CACHE)".into())
    })?;
    match action {
        "stats" => {
            let (files, bytes) = cache.stats()?;
            let payload = json!({"dir": cache.dir().display().to_string(), "entries": files, "bytes": bytes});
            io::emit(&cli.out, &jsonout::to_canonical_string(&payload))
        }
        "clear" => {
            let removed = cache.clear()?;
            let payload = json!({"removed": removed});
            io::emit(&cli.out, &jsonout::to_canonical_string(&payload))
        }
        _ => {
            // self-check: recompute a deterministic 5% sample (at least one)
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let entries = cache.entries()?;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
            let sample = (entries.len().div_ceil(20)).max(1).min(entries.len());
            let picked: Vec<_> = entries
                .choose_multiple(&mut rng, sample)
                .cloned()
                .collect();
            let mut mismatches = Vec::new();
            for (hash, comp, params, input, cached) in &picked {
                let p = codec::parse_text(input)?;
                let recomputed = match comp.as_str() {
                    "invariants" => {
                        let bigraded = params.contains("bigraded_true");
                        serde_json::to_string_pretty(&invariants_value(&p, bigraded)).unwrap()
                    }
                    "fingerprint" => {
                        let fp = rigidity::fingerprint(&p, 20)?;
                        serde_json::to_string_pretty(&serde_json::to_value(&fp).unwrap())
                            .unwrap()
                    }
                    _ => continue,
                };
                if &recomputed != cached {
                    mismatches.push(format!("{hash}-{comp}-{params}"));
                }
            }
            let payload = json!({
                "checked": picked.len(),
                "total": entries.len(),
                "mismatches": mismatches,
            });
            io::emit(&cli.out, &jsonout::to_canonical_string(&payload))?;
            if payload["mismatches"].as_array().is_some_and(|a| !a.is_empty()) {
                return Err(PolyError::PreconditionViolated(
                    "cache self-check found mismatches".into(),
                ));
            }
            Ok(())
        }
    }
}
