//! Cross-module property suites: corpus-wide invariants of the polytope
//! machinery, the ring axioms on random elements, and the agreement of the
//! combinatorial and algebraic routes.

use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;

use polykit_core::belts::{self, PolytopeClass};
use polykit_core::codec;
use polykit_core::cohomology::{a3_report, bk_rank, i7_report, CohomRing, RankEngine, RingElement};
use polykit_core::construct;
use polykit_core::corpus;
use polykit_core::homology::betti_table;
use polykit_core::reference;
use polykit_core::scalar::{Coeff, Q};
use polykit_core::subset::OmegaSubset;
use polykit_core::SimplePolytope3;

fn exhaustive_9() -> &'static Vec<SimplePolytope3> {
    static CORPUS: OnceLock<Vec<SimplePolytope3>> = OnceLock::new();
    CORPUS.get_or_init(|| corpus::exhaustive_simple(9))
}

#[test]
fn corpus_euler_identities() {
    for p in exhaustive_9() {
        let m = p.m();
        assert_eq!(3 * p.f0(), 2 * p.f1());
        assert_eq!(p.f0(), 2 * (m - 2));
        assert_eq!(p.f1(), 3 * (m - 2));
        let pvec = p.p_vector();
        assert_eq!(pvec.values().sum::<usize>(), m);
        let weighted: i64 = pvec.iter().map(|(&k, &c)| (6 - k as i64) * c as i64).sum();
        assert_eq!(weighted, 12);
        assert_eq!(
            p.n2_pairs().len(),
            m * (m - 1) / 2 - 3 * (m - 2),
            "N2 count at m={m}"
        );
        p.nerve().validate_sphere().unwrap();
    }
}

#[test]
fn canonical_form_is_relabeling_invariant_across_corpus() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    for p in exhaustive_9().iter().step_by(7) {
        let code = p.canonical().code.clone();
        for _ in 0..10 {
            let mut perm: Vec<usize> = (0..p.m()).collect();
            perm.shuffle(&mut rng);
            let q = p.relabel(&perm).unwrap();
            assert_eq!(q.canonical().code, code);
        }
    }
}

#[test]
fn isomorphism_is_an_equivalence_and_matches_backtracking() {
    let members: Vec<&SimplePolytope3> = exhaustive_9().iter().step_by(11).collect();
    for (i, p) in members.iter().enumerate() {
        assert!(p.is_isomorphic(p));
        for q in members.iter().skip(i + 1) {
            let fast = p.is_isomorphic(q);
            let slow = reference::isomorphism_backtrack(p, q).is_some();
            assert_eq!(fast, slow);
        }
    }
}

#[test]
fn planar_code_roundtrip_of_corpus() {
    let members: Vec<&SimplePolytope3> = exhaustive_9().iter().step_by(5).collect();
    let bytes = codec::write_planar_code(&members).unwrap();
    let parsed = codec::parse_planar_code(&bytes).unwrap();
    assert_eq!(parsed.len(), members.len());
    for (orig, back) in members.iter().zip(parsed.iter()) {
        assert!(orig.is_isomorphic(back));
    }
}

#[test]
fn belt_enumeration_matches_brute_force_on_corpus() {
    for p in exhaustive_9().iter().filter(|p| p.m() <= 8) {
        for k in 3..=5 {
            assert_eq!(
                belts::enumerate_belts(p, k),
                reference::belts_brute_force(p, k),
                "m={} k={k}",
                p.m()
            );
        }
    }
}

#[test]
fn trivial_belts_of_apog_surround_exactly_one_face() {
    // excluding the cube and the pentagonal prism, where 4-belts surround
    // two opposite faces
    let cube = construct::cube();
    let m5 = construct::prism(5).unwrap();
    let mut members: Vec<SimplePolytope3> = exhaustive_9()
        .iter()
        .filter(|p| belts::is_almost_pogorelov(p))
        .cloned()
        .collect();
    members.extend(corpus::apog_family_from_as3(12, 20));
    for p in members {
        if p.is_isomorphic(&cube) || p.is_isomorphic(&m5) {
            continue;
        }
        for k in 3..=p.m() - 2 {
            for belt in belts::enumerate_belts(&p, k) {
                let surrounded = belt.surrounded_faces(&p);
                if !surrounded.is_empty() {
                    assert_eq!(surrounded.len(), 1, "m={} belt {:?}", p.m(), belt.faces);
                }
            }
        }
    }
}

#[test]
fn ideal_faces_are_surrounded_by_quadrangle_alternating_belts() {
    for (_, p) in corpus::ideal_family(9) {
        let quads = *p.p_vector().get(&4).unwrap();
        let four_belts = belts::enumerate_belts(&p, 4);
        assert_eq!(four_belts.len(), quads);
        assert_eq!(2 * quads, p.m() - 2);
        for f in 0..p.m() {
            let deg = p.degree(f);
            if deg == 4 {
                continue;
            }
            // the neighbor ring is a (2k)-belt containing k quadrangles
            let ring: Vec<usize> = p.neighbors(f).to_vec();
            let belt = belts::enumerate_belts(&p, deg)
                .into_iter()
                .find(|b| b.surrounded_faces(&p).contains(&f))
                .expect("every face of a flag polytope is surrounded by its ring");
            assert_eq!(belt.omega(), OmegaSubset::from_iter(ring.iter().copied()));
            let qcount = belt.faces.iter().filter(|&&g| p.degree(g) == 4).count();
            assert_eq!(qcount, deg / 2, "face {f} of degree {deg}");
        }
    }
}

#[test]
fn product_is_well_defined_on_representatives() {
    // changing a cocycle by a coboundary does not change the product class
    let p = construct::associahedron();
    let ring: CohomRing<Q> = CohomRing::new(&p);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
    let pairs = p.n2_pairs();
    for _ in 0..25 {
        let (a, b) = pairs[rng.gen_range(0..pairs.len())];
        let (c, d) = pairs[rng.gen_range(0..pairs.len())];
        let x = ring.omega_tilde(a, b).unwrap();
        let y = ring.omega_tilde(c, d).unwrap();
        let xy = ring.product(&x, &y);
        // perturb the representative of x by a coboundary: the class is
        // unchanged, so the projected product must be identical
        let omega = OmegaSubset::pair(a, b);
        let basis = ring.basis(omega, 0);
        let mut cochain = basis.lift(&[Q::one()]);
        let shift = Q::from_int(rng.gen_range(-3..=3));
        for v in cochain.iter_mut() {
            *v = v.add(&shift); // constant cochains are coboundaries
        }
        let coords = basis.express(cochain).expect("still a cocycle");
        let x2 = component_from(&p, omega, 0, coords);
        let xy2 = ring.product(&x2, &y);
        assert_eq!(xy, xy2);
    }
}

fn component_from(
    p: &SimplePolytope3,
    omega: OmegaSubset,
    d: i8,
    coords: Vec<Q>,
) -> RingElement<Q> {
    let mut comps = std::collections::BTreeMap::new();
    if coords.iter().any(|c| !c.is_zero()) {
        comps.insert((omega.0, d), coords);
    }
    RingElement { m: p.m(), comps }
}

#[test]
fn poincare_duality_pairing_is_nondegenerate() {
    // for every piece (omega, 0) there is a complementary (omega', 1) class
    // with nonzero product into the fundamental piece
    for p in [construct::cube(), construct::prism(5).unwrap()] {
        let ring: CohomRing<Q> = CohomRing::new(&p);
        let m = p.m();
        for omega in OmegaSubset::all(m) {
            let b0 = ring.basis(omega, 0);
            if b0.dim() == 0 {
                continue;
            }
            let comp = omega.complement(m);
            let dual = ring.basis(comp, 1);
            for t in 0..b0.dim() {
                let mut coords = vec![Q::zero(); b0.dim()];
                coords[t] = Q::one();
                let x = component_from(&p, omega, 0, coords);
                let mut hit = false;
                for s in 0..dual.dim() {
                    let mut dc = vec![Q::zero(); dual.dim()];
                    dc[s] = Q::one();
                    let y = component_from(&p, comp, 1, dc);
                    if !ring.product(&x, &y).is_zero() {
                        hit = true;
                        break;
                    }
                }
                assert!(hit, "degenerate pairing at {omega:?} on m={m}");
            }
        }
    }
}

#[test]
fn four_belt_product_rule_matches_cochain_route() {
    // omega~_1 * omega~_2 is nonzero exactly when the four faces form a
    // 4-belt with these pairs opposite, and then equals a belt class up to
    // sign
    for p in exhaustive_9().iter().filter(|p| p.m() <= 8).step_by(2) {
        let ring: CohomRing<Q> = CohomRing::new(p);
        let four_belts = belts::enumerate_belts(p, 4);
        let pairs = p.n2_pairs();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for &(c, d) in pairs.iter().skip(i + 1) {
                let o1 = OmegaSubset::pair(a, b);
                let o2 = OmegaSubset::pair(c, d);
                if !o1.is_disjoint(o2) {
                    continue;
                }
                let x = ring.omega_tilde(a, b).unwrap();
                let y = ring.omega_tilde(c, d).unwrap();
                let xy = ring.product(&x, &y);
                let belt = four_belts.iter().find(|bl| {
                    bl.omega() == o1.union(o2)
                        && !bl.faces.windows(2).any(|w| {
                            (w[0] == a && w[1] == b)
                                || (w[0] == b && w[1] == a)
                                || (w[0] == c && w[1] == d)
                                || (w[0] == d && w[1] == c)
                        })
                });
                match belt {
                    Some(bl) => {
                        let bc = ring.belt_class(bl);
                        assert!(
                            xy == bc || xy == bc.neg(),
                            "m={} pairs ({a},{b}),({c},{d})",
                            p.m()
                        );
                    }
                    None => assert!(xy.is_zero(), "m={} pairs ({a},{b}),({c},{d})", p.m()),
                }
            }
        }
    }
}

#[test]
fn combinatorial_and_algebraic_a3_agree_on_corpus() {
    for p in exhaustive_9() {
        let engine = RankEngine::new(p);
        let report = a3_report(&engine);
        assert_eq!(
            report.a3_rank, report.combinatorial_a3_rank,
            "m={} {}",
            p.m(),
            p.canonical_hash()
        );
        for k in 3..=6.min(p.m() - 2) {
            assert_eq!(
                bk_rank(&engine, k),
                belts::enumerate_belts(p, k).len() as i64
            );
        }
    }
}

#[test]
fn pogorelov_iff_flag_with_trivial_pairing() {
    let mut members: Vec<SimplePolytope3> = exhaustive_9().clone();
    members.push(construct::dodecahedron());
    for p in &members {
        let engine = RankEngine::new(p);
        let trivial = a3_report(&engine).pairing_rank == 0;
        let algebraic = belts::is_flag(p) && trivial;
        assert_eq!(belts::is_pogorelov(p), algebraic, "m={}", p.m());
    }
}

#[test]
fn i7_ranks_agree_between_fields_on_corpus() {
    // the specification leaves open whether the two can differ; record that
    // they agree everywhere on the desk corpus
    for p in exhaustive_9().iter().step_by(3) {
        let engine = RankEngine::new(p);
        let report = i7_report(&engine);
        assert_eq!(report.rank_q, report.rank_f2, "m={}", p.m());
    }
}

#[test]
fn hochster_table_is_deterministic_and_duality_symmetric() {
    let p = construct::permutohedron();
    let nerve = p.nerve();
    let t1 = betti_table(&nerve);
    let t2 = betti_table(&nerve);
    for omega in OmegaSubset::all(p.m()).step_by(97) {
        assert_eq!(t1.betti(omega), t2.betti(omega));
        let dual = omega.complement(p.m());
        for d in -1i32..=2 {
            assert_eq!(t1.betti(omega).b(d), t1.betti(dual).b(1 - d));
        }
    }
}

#[test]
fn classification_agrees_with_scc_on_small_corpus() {
    for p in exhaustive_9().iter().filter(|p| p.m() <= 8) {
        if p.m() == 4 {
            continue;
        }
        let class = belts::classify(p).class;
        let scc_flag = belts::check_scc(p, belts::SccVariant::Flag).holds;
        assert_eq!(scc_flag, class != PolytopeClass::NotFlag, "m={}", p.m());
    }
}
