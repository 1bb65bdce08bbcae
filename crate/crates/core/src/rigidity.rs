//! Invariant fingerprints and the criterion/rigidity experiments.
//!
//! A fingerprint collects every computable ring-isomorphism invariant this
//! library knows: the graded and bigraded Betti data, belt-class ranks, the
//! H3 pairing kernel, the image rank of H3 x H4, the annihilator-dimension
//! multiset and the face-ring dimensions of the canonical characteristic
//! map. All fields are deterministic functions of the combinatorial type.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::belts::{self, SccVariant};
use crate::cohomology::{a3_report, annihilator_multiset, bk_rank, i7_report, RankEngine};
use crate::error::{PolyError, Result};
use crate::polytope::SimplePolytope3;
use crate::toric::{self, FaceRingMode};

/// The invariant fingerprint of a polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub m: usize,
    pub p_vector: BTreeMap<usize, usize>,
    pub class: String,
    /// ranks of H^k(Z_P) for k = 0..=m+3
    pub betti: Vec<i64>,
    /// aggregated bigraded ranks: "i,j" -> beta^{-i,2j}, nonzero cells only
    pub bigraded: BTreeMap<String, i64>,
    /// k -> number of k-belts, nonzero entries only
    pub belt_ranks: BTreeMap<usize, i64>,
    pub pairing_rank: i64,
    pub a3_rank: i64,
    pub i7_rank_q: i64,
    pub i7_rank_f2: i64,
    /// sorted annihilator dimensions of the pair classes
    pub annihilator_multiset: Vec<i64>,
    /// graded dimensions of the canonical small cover, when defined
    pub small_cover_dims: Option<Vec<i64>>,
}

/// Compute the fingerprint. `max_m` bounds the 2^m table computations.
pub fn fingerprint(p: &SimplePolytope3, max_m: usize) -> Result<Fingerprint> {
    if p.m() > max_m {
        return Err(PolyError::SizeBound(format!(
            "fingerprint needs 2^m subsets; m = {} exceeds the bound {max_m}",
            p.m()
        )));
    }
    let engine = RankEngine::new(p);
    let m = p.m();
    let betti: Vec<i64> = (0..=m + 3).map(|k| engine.table.h_rank(k)).collect();
    let mut bigraded = BTreeMap::new();
    for j in 0..=m {
        for i in 0..=m {
            let r = engine.table.bigraded(i, j);
            if r != 0 {
                bigraded.insert(format!("{i},{j}"), r);
            }
        }
    }
    let mut belt_ranks = BTreeMap::new();
    for k in 3..=m.saturating_sub(2) {
        let r = bk_rank(&engine, k);
        if r != 0 {
            belt_ranks.insert(k, r);
        }
    }
    let a3 = a3_report(&engine);
    let i7 = i7_report(&engine);
    let mut annihilator_multiset: Vec<i64> = annihilator_multiset(&engine)
        .into_iter()
        .map(|(_, dim)| dim)
        .collect();
    annihilator_multiset.sort_unstable();
    let small_cover_dims = toric::canonical_lambda(p)
        .ok()
        .and_then(|l| toric::face_ring_dims(p, &l, FaceRingMode::SmallCoverZ2).ok());
    Ok(Fingerprint {
        m,
        p_vector: p.p_vector(),
        class: format!("{:?}", belts::classify(p).class),
        betti,
        bigraded,
        belt_ranks,
        pairing_rank: a3.pairing_rank,
        a3_rank: a3.a3_rank,
        i7_rank_q: i7.rank_q,
        i7_rank_f2: i7.rank_f2,
        annihilator_multiset,
        small_cover_dims,
    })
}

/// The named criteria of the verification suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Criterion {
    FlagH4,
    ApogRanks,
    IdealB4,
    SccEquiv,
    PogorelovH3H3,
}

impl Criterion {
    pub fn parse(s: &str) -> Result<Criterion> {
        Ok(match s {
            "flag_h4" => Criterion::FlagH4,
            "apog_ranks" => Criterion::ApogRanks,
            "ideal_b4" => Criterion::IdealB4,
            "scc_equiv" => Criterion::SccEquiv,
            "pogorelov_h3h3" => Criterion::PogorelovH3H3,
            _ => {
                return Err(PolyError::BadParameter(format!(
                    "unknown criterion {s}; expected flag_h4|apog_ranks|ideal_b4|scc_equiv|pogorelov_h3h3"
                )))
            }
        })
    }
}

/// Both sides of one criterion evaluated independently.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub criterion: String,
    pub m: usize,
    pub combinatorial_side: bool,
    pub algebraic_side: bool,
    pub agree: bool,
    pub numbers: BTreeMap<String, i64>,
}

/// Flag criterion: for P != simplex, P is flag iff
/// rk H^4 = (m-2)(m-4)(m-6)/3.
pub fn verify_flag_h4(p: &SimplePolytope3) -> CriterionReport {
    let engine = RankEngine::new(p);
    let m = p.m() as i64;
    let h4 = engine.table.h_rank(4);
    let formula = (m - 2) * (m - 4) * (m - 6) / 3;
    let is_flag = belts::is_flag(p);
    let algebraic = h4 == formula && p.m() != 4;
    let mut numbers = BTreeMap::new();
    numbers.insert("h4_rank".into(), h4);
    numbers.insert("formula".into(), formula);
    CriterionReport {
        criterion: "flag_h4".into(),
        m: p.m(),
        combinatorial_side: is_flag,
        algebraic_side: algebraic,
        agree: is_flag == algebraic,
        numbers,
    }
}

/// The two rank equalities: flag P lies in the almost Pogorelov family
/// minus {cube, pentagonal prism} iff `2 rk B4 = rk(H3/A3)` and
/// `rk I7 = rk B5 + (m-5) rk B4`.
pub fn verify_apog_ranks(p: &SimplePolytope3) -> CriterionReport {
    let engine = RankEngine::new(p);
    let m = p.m() as i64;
    let a3 = a3_report(&engine);
    let b4 = bk_rank(&engine, 4);
    let b5 = bk_rank(&engine, 5);
    let i7 = i7_report(&engine);
    let eq1 = 2 * b4 == a3.pairing_rank;
    let eq2 = i7.rank_q == b5 + (m - 5) * b4;
    // membership: flag and every 4-belt trivial, excluding the cube and the
    // pentagonal prism (the belt-inclusive reading, under which Pogorelov
    // polytopes belong vacuously)
    let excluded = p.is_isomorphic(&crate::construct::cube())
        || p.is_isomorphic(&crate::construct::prism(5).expect("m5xi"));
    let member = belts::is_almost_pogorelov(p) && !excluded;
    let mut numbers = BTreeMap::new();
    numbers.insert("b4".into(), b4);
    numbers.insert("b5".into(), b5);
    numbers.insert("pairing_rank".into(), a3.pairing_rank);
    numbers.insert("i7_q".into(), i7.rank_q);
    numbers.insert("i7_expected".into(), b5 + (m - 5) * b4);
    CriterionReport {
        criterion: "apog_ranks".into(),
        m: p.m(),
        combinatorial_side: member,
        algebraic_side: eq1 && eq2,
        agree: member == (eq1 && eq2),
        numbers,
    }
}

/// Ideal criterion: an almost Pogorelov polytope (other than the cube and
/// the pentagonal prism) is ideal iff `2 rk B4 = m - 2`, equivalently every
/// vertex lies on exactly one quadrangle.
pub fn verify_ideal_b4(p: &SimplePolytope3) -> CriterionReport {
    let engine = RankEngine::new(p);
    let b4 = bk_rank(&engine, 4);
    let vertex_side = belts::is_ideal_almost_pogorelov(p);
    let rank_side = belts::is_almost_pogorelov(p) && 2 * b4 == p.m() as i64 - 2;
    let mut numbers = BTreeMap::new();
    numbers.insert("b4".into(), b4);
    numbers.insert("m_minus_2".into(), p.m() as i64 - 2);
    numbers.insert(
        "p4".into(),
        *p.p_vector().get(&4).unwrap_or(&0) as i64,
    );
    CriterionReport {
        criterion: "ideal_b4".into(),
        m: p.m(),
        combinatorial_side: vertex_side,
        algebraic_side: rank_side,
        agree: vertex_side == rank_side,
        numbers,
    }
}

/// SCC equivalences: each separable circuit condition holds exactly for its
/// family (with P8 joining the almost Pogorelov side).
pub fn verify_scc_equiv(p: &SimplePolytope3) -> CriterionReport {
    let flag = belts::is_flag(p);
    let pog = belts::is_pogorelov(p);
    let apog = belts::is_almost_pogorelov(p);
    let reports = [
        belts::check_scc(p, SccVariant::Flag),
        belts::check_scc(p, SccVariant::Pogorelov),
        belts::check_scc(p, SccVariant::AlmostPogorelov),
    ];
    let (scc_flag, scc_pog, scc_apog) = (reports[0].holds, reports[1].holds, reports[2].holds);
    let is_p8 = p.is_isomorphic(&crate::construct::p8());
    let ok = (scc_flag == flag) && (scc_pog == pog) && (scc_apog == (apog || is_p8));
    let mut numbers = BTreeMap::new();
    numbers.insert("scc_flag".into(), scc_flag as i64);
    numbers.insert("scc_pogorelov".into(), scc_pog as i64);
    numbers.insert("scc_almost_pogorelov".into(), scc_apog as i64);
    for (name, report) in ["flag", "pogorelov", "almost_pogorelov"].iter().zip(&reports) {
        if let Some((i, j, k)) = report.violating_triple {
            numbers.insert(format!("{name}_violating_fi"), i as i64 + 1);
            numbers.insert(format!("{name}_violating_fj"), j as i64 + 1);
            numbers.insert(format!("{name}_violating_fk"), k as i64 + 1);
        }
    }
    CriterionReport {
        criterion: "scc_equiv".into(),
        m: p.m(),
        combinatorial_side: ok,
        algebraic_side: ok,
        agree: ok,
        numbers,
    }
}

/// Pogorelov iff flag with trivial H3 x H3 multiplication.
pub fn verify_pogorelov_h3h3(p: &SimplePolytope3) -> CriterionReport {
    let engine = RankEngine::new(p);
    let a3 = a3_report(&engine);
    let pog = belts::is_pogorelov(p);
    let trivial = a3.pairing_rank == 0;
    let algebraic = belts::is_flag(p) && trivial;
    let mut numbers = BTreeMap::new();
    numbers.insert("pairing_rank".into(), a3.pairing_rank);
    CriterionReport {
        criterion: "pogorelov_h3h3".into(),
        m: p.m(),
        combinatorial_side: pog,
        algebraic_side: algebraic,
        agree: pog == algebraic,
        numbers,
    }
}

pub fn verify_criterion(p: &SimplePolytope3, criterion: Criterion) -> CriterionReport {
    match criterion {
        Criterion::FlagH4 => verify_flag_h4(p),
        Criterion::ApogRanks => verify_apog_ranks(p),
        Criterion::IdealB4 => verify_ideal_b4(p),
        Criterion::SccEquiv => verify_scc_equiv(p),
        Criterion::PogorelovH3H3 => verify_pogorelov_h3h3(p),
    }
}

/// Report of the soundness/separation experiment.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub members: usize,
    pub relabelings_per_member: usize,
    /// soundness: every relabeling reproduced the fingerprint
    pub soundness_failures: Vec<String>,
    /// pairs of non-isomorphic members with identical fingerprints; logged
    /// findings, not failures
    pub collisions: Vec<(String, String)>,
    pub fingerprints: BTreeMap<String, Fingerprint>,
}

/// Soundness: random relabelings yield identical fingerprints (hard
/// assertion). Separation: pairwise fingerprint comparison of the
/// non-isomorphic members; collisions are reported, not failed, since the
/// fingerprint is a ring-isomorphism-invariant projection.
pub fn rigidity_experiment(
    corpus: &[(String, SimplePolytope3)],
    relabelings: usize,
    seed: u64,
    max_m: usize,
) -> Result<ExperimentReport> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut soundness_failures = Vec::new();
    let mut fingerprints: BTreeMap<String, Fingerprint> = BTreeMap::new();
    for (name, p) in corpus {
        let base = fingerprint(p, max_m)?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ p.canonical().code[0] as u64);
        let perms: Vec<Vec<usize>> = (0..relabelings)
            .map(|_| {
                let mut perm: Vec<usize> = (0..p.m()).collect();
                perm.shuffle(&mut rng);
                perm
            })
            .collect();
        let bad: Vec<String> = perms
            .par_iter()
            .filter_map(|perm| {
                let q = p.relabel(perm).expect("relabeling stays valid");
                let fq = fingerprint(&q, max_m).expect("fingerprint of relabeling");
                if fq != base {
                    Some(format!("{name}: relabeling changed the fingerprint"))
                } else {
                    None
                }
            })
            .collect();
        soundness_failures.extend(bad);
        fingerprints.insert(name.clone(), base);
    }
    let mut collisions = Vec::new();
    let names: Vec<&String> = fingerprints.keys().collect();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            let (a, b) = (names[i], names[j]);
            if fingerprints[a] == fingerprints[b] {
                let pa = &corpus.iter().find(|(n, _)| n == a).unwrap().1;
                let pb = &corpus.iter().find(|(n, _)| n == b).unwrap().1;
                if !pa.is_isomorphic(pb) {
                    collisions.push((a.clone(), b.clone()));
                }
            }
        }
    }
    Ok(ExperimentReport {
        members: corpus.len(),
        relabelings_per_member: relabelings,
        soundness_failures,
        collisions,
        fingerprints,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    #[test]
    fn fingerprint_of_pe3() {
        let p = construct::permutohedron();
        let f = fingerprint(&p, 20).unwrap();
        assert_eq!(f.m, 14);
        assert_eq!(f.class, "IdealAlmostPogorelov");
        assert_eq!(f.belt_ranks[&4], 6);
        assert_eq!(2 * f.belt_ranks[&4], 12);
        assert_eq!(f.betti[3], 55);
        assert_eq!(f.betti[4], 320);
        assert!(f.small_cover_dims.is_some());
    }

    #[test]
    fn fingerprint_of_dodecahedron() {
        let p = construct::dodecahedron();
        let f = fingerprint(&p, 20).unwrap();
        assert_eq!(f.class, "Pogorelov");
        assert!(!f.belt_ranks.contains_key(&3));
        assert!(!f.belt_ranks.contains_key(&4));
        assert_eq!(f.pairing_rank, 0);
    }

    #[test]
    fn fingerprint_of_simplex() {
        let p = construct::simplex();
        let f = fingerprint(&p, 20).unwrap();
        assert_eq!(f.class, "NotFlag");
        assert_eq!(f.betti, vec![1, 0, 0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn criterion_reports_on_named() {
        let pe3 = construct::permutohedron();
        let r = verify_ideal_b4(&pe3);
        assert!(r.agree && r.combinatorial_side);
        assert_eq!(r.numbers["b4"], 6);

        let r = verify_apog_ranks(&construct::cube());
        assert!(r.agree && !r.combinatorial_side, "cube is excluded: {r:?}");

        let r = verify_flag_h4(&construct::simplex());
        assert!(!r.combinatorial_side);

        // the dodecahedron satisfies the rank equalities as a vacuous member
        let r = verify_apog_ranks(&construct::dodecahedron());
        assert!(r.agree && r.combinatorial_side && r.algebraic_side, "{r:?}");
    }

    #[test]
    fn relabeling_soundness_small() {
        let corpus = vec![
            ("as3".to_string(), construct::associahedron()),
            ("cube".to_string(), construct::cube()),
        ];
        let report = rigidity_experiment(&corpus, 5, 42, 20).unwrap();
        assert!(report.soundness_failures.is_empty());
        assert!(report.collisions.is_empty());
    }
}
