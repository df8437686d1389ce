mod common;

use std::sync::Arc;

use proptest::prelude::*;

use tcn_core::algebra::{make_presentation, Element, Presentation, PresentationSpec};
use tcn_core::bounds::{cat_bounds, eqtc_bounds, tc_bounds, Group, Side, Status, TcOptions};
use tcn_core::certgen::{cert_case1, cert_proj, cert_r2t, ConstructionId};
use tcn_core::cuplength::{cup_exact, cup_search, default_pool, verify_certificate, OracleConfig, SearchStrategy};
use tcn_core::par::Exec;
use tcn_core::space::{cohomology_of, SpaceDescriptor};

fn milnor(s: u32, r: u32) -> Arc<Presentation> {
    make_presentation(&PresentationSpec::milnor(s, r)).unwrap()
}

fn element(p: &Arc<Presentation>, bits: &[bool]) -> Element {
    Element::from_ranks(p, bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i % p.basis_len()))
}

fn pair() -> impl Strategy<Value = (u32, u32)> {
    (1u32..=6).prop_flat_map(|r| (0..=r, Just(r)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(
        (s, r) in pair(),
        x in prop::collection::vec(any::<bool>(), 0..=24),
        y in prop::collection::vec(any::<bool>(), 0..=24),
        z in prop::collection::vec(any::<bool>(), 0..=24),
    ) {
        let p = milnor(s, r);
        let (x, y, z) = (element(&p, &x), element(&p, &y), element(&p, &z));
        prop_assert_eq!(x.multiply(&y).unwrap(), y.multiply(&x).unwrap());
        prop_assert_eq!(
            x.multiply(&y).unwrap().multiply(&z).unwrap(),
            x.multiply(&y.multiply(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.multiply(&y.add(&z).unwrap()).unwrap(),
            x.multiply(&y).unwrap().add(&x.multiply(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(x.multiply(&Element::unit(&p)).unwrap(), x.clone());
        prop_assert_eq!(x.power(3), x.multiply(&x).unwrap().multiply(&x).unwrap());
    }

    #[test]
    fn machine_verified_lower_never_exceeds_oracle((s, r) in (1u32..=4).prop_flat_map(|r| (1..=r, Just(r))), n in 2usize..=3) {
        let space = SpaceDescriptor::RealMilnor { r, s };
        let opts = TcOptions { use_oracle: true, ..TcOptions::default() };
        let rep = tc_bounds(&space, n, &opts).unwrap();
        let exact = cup_exact(&cohomology_of(&space).unwrap(), n, &OracleConfig::default()).unwrap().value;
        prop_assert_eq!(rep.verified_lower, Some(exact + 1));
        for e in rep.entries(Side::Lower, Status::MachineVerified) {
            prop_assert!(e.value.unwrap() <= exact + 1, "{} exceeds oracle", e.rule);
        }
        prop_assert!(rep.consistent || rep.entries(Side::Lower, Status::PaperClaimed).count() > 0);
    }
}

#[test]
fn oracle_is_monotone_in_arity() {
    let cfg = OracleConfig::default();
    for (s, r) in [(0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3)] {
        let p = milnor(s, r);
        let values: Vec<u32> = (2..=4).map(|n| cup_exact(&p, n, &cfg).unwrap().value).collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "(s={s}, r={r}): {values:?}");
    }
}

#[test]
fn search_never_beats_oracle() {
    let cfg = OracleConfig::default();
    for (space, n) in [("rh:2,1", 2), ("rh:2,1", 3), ("rh:3,2", 2), ("rp:2", 3), ("rp:3", 2)] {
        let space: SpaceDescriptor = space.parse().unwrap();
        let p = cohomology_of(&space).unwrap();
        let exact = cup_exact(&p, n, &cfg).unwrap().value;
        let found = cup_search(&space, n, &default_pool(&p, n), SearchStrategy::default()).unwrap();
        assert!(verify_certificate(&found.certificate).unwrap().is_verified());
        assert!(found.certificate.claimed_cup <= exact, "{space} n={n}");
    }
}

#[test]
fn generated_certificates_are_zero_divisor_products() {
    let certs = [
        cert_case1(1, 2, 2).unwrap(),
        cert_case1(1, 2, 3).unwrap(),
        cert_case1(0, 1, 4).unwrap(),
        cert_r2t(2, 2, 2).unwrap(),
        cert_r2t(1, 1, 3).unwrap(),
        cert_proj(2, 3).unwrap(),
        cert_proj(0, 4).unwrap(),
        ConstructionId::Case2 { p1: 1, p2: 1 }.generate(3).unwrap(),
        ConstructionId::Case2 { p1: 0, p2: 0 }.generate(4).unwrap(),
    ];
    for c in &certs {
        let rep = verify_certificate(c).unwrap();
        assert!(rep.per_factor.iter().all(|f| f.is_zero_divisor), "{}", c.space);
        assert_eq!(c.claimed_tc_lower, c.claimed_cup + 1);
    }
}

#[test]
fn projective_circle_certificate_matches_oracle() {
    // RP^1 ring: certificate of length n - 1 and oracle n - 1.
    let c = cert_proj(0, 4).unwrap();
    let rep = verify_certificate(&c).unwrap();
    let p = cohomology_of(&c.space).unwrap();
    assert_eq!(rep.verified_cup, Some(3));
    assert_eq!(cup_exact(&p, 4, &OracleConfig::default()).unwrap().value, 3);
}

#[test]
fn exec_modes_agree() {
    let p = milnor(2, 3);
    let seq = OracleConfig { exec: Exec::Sequential, ..OracleConfig::default() };
    let par = OracleConfig { exec: Exec::Parallel, ..OracleConfig::default() };
    assert_eq!(cup_exact(&p, 3, &seq).unwrap(), cup_exact(&p, 3, &par).unwrap());
    let no_shortcut = OracleConfig { saturation_shortcut: false, ..OracleConfig::default() };
    assert_eq!(cup_exact(&p, 3, &seq).unwrap(), cup_exact(&p, 3, &no_shortcut).unwrap());
}

#[test]
fn verified_tc_lower_is_monotone_in_n() {
    for space in ["rh:4,3", "rh:2,1", "rp:2", "rh:5,3", "ch:4,3"] {
        let space: SpaceDescriptor = space.parse().unwrap();
        let lows: Vec<u32> = (2..=4)
            .map(|n| tc_bounds(&space, n, &TcOptions::default()).unwrap().verified_lower.unwrap())
            .collect();
        assert!(lows.windows(2).all(|w| w[0] <= w[1]), "{space}: {lows:?}");
    }
}

#[test]
fn equivariant_lower_dominates_plain() {
    let opts = TcOptions::default();
    for (r, s) in [(5u32, 3u32), (7, 3), (7, 5), (9, 3)] {
        let space = SpaceDescriptor::RealMilnor { r, s };
        for n in 2..=3 {
            let plain = tc_bounds(&space, n, &opts).unwrap();
            for g in [Group::Z2, Group::Circle] {
                let eq = eqtc_bounds(&space, g, n, &opts).unwrap();
                assert!(eq.lower >= plain.lower, "{space} {g} n={n}");
                assert!(eq.consistent);
            }
        }
    }
}

#[test]
fn category_of_a_single_copy_is_bounded_by_dimension() {
    for space in ["rh:4,3", "rh:2,1", "rp:5", "cp:3", "ch:2,1", "prod:rp3,rp2", "prod:rh2.1,cp1"] {
        let space: SpaceDescriptor = space.parse().unwrap();
        let rep = cat_bounds(&space, 1).unwrap();
        let dim_rule = rep.trace.iter().find(|e| e.rule == "dimension").unwrap();
        assert_eq!(dim_rule.value, Some(space.dimension() + 1));
        assert!(rep.upper <= space.dimension() + 1);
        assert!(rep.consistent);
    }
}

#[test]
fn complex_milnor_matches_real_cup_lengths() {
    let cfg = OracleConfig::default();
    for (r, s) in [(2, 1), (3, 2)] {
        let real = cohomology_of(&SpaceDescriptor::RealMilnor { r, s }).unwrap();
        let complex = cohomology_of(&SpaceDescriptor::ComplexMilnor { r, s }).unwrap();
        assert_eq!(
            cup_exact(&real, 2, &cfg).unwrap().value,
            cup_exact(&complex, 2, &cfg).unwrap().value
        );
    }
}
