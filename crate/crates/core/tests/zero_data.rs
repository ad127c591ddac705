//! The bundled zero lists against the native scanner and the closed forms.

use std::path::PathBuf;

use mertens_core::arith::{CharacterGroup, FundamentalDiscriminant};
use mertens_core::bias::{b1, b_chi, character_zero_sum, primitive_bias, ZeroStore};
use mertens_core::special::{l_complex, CharacterValues};
use mertens_core::zeros::{l_zero_scan, zeta_zero_scan, LFunctionId, Weight};
use num_complex::Complex64;

fn store() -> ZeroStore {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros");
    ZeroStore::from_dir(&dir).expect("bundled zero lists ingest cleanly")
}

#[test]
fn bundled_zeta_matches_scan() {
    let s = store();
    let ingested = s.get(&LFunctionId::Zeta).unwrap();
    let scanned = zeta_zero_scan(100.0).unwrap();
    let n = ingested.count_up_to(100.0);
    assert_eq!(n, scanned.len());
    for (a, b) in ingested.ordinates[..n].iter().zip(&scanned.ordinates) {
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }
}

#[test]
fn bundled_real_characters_match_scans() {
    let s = store();
    for d in [-3, -4, 5, 8, -8, 12, -24, 24] {
        let ingested = s.get(&LFunctionId::Discriminant(d)).unwrap();
        let scanned = l_zero_scan(FundamentalDiscriminant::new(d).unwrap(), ingested.t_max).unwrap();
        assert_eq!(ingested.len(), scanned.len(), "d = {d}");
        for (a, b) in ingested.ordinates.iter().zip(&scanned.ordinates) {
            assert!((a - b).abs() < 1e-8, "d = {d}: {a} vs {b}");
        }
    }
}

fn mod5(index: u64) -> mertens_core::arith::DirichletCharacter {
    CharacterGroup::new(5).character(index)
}

#[test]
fn complex_character_lists_are_zeros() {
    let s = store();
    for j in [1, 3] {
        let chi = mod5(j);
        assert!(!chi.is_real());
        let list = s.for_character(&chi).unwrap();
        assert_eq!(list.id, LFunctionId::Character { modulus: 5, index: j });
        let psi = CharacterValues::from_character(&chi);
        for &g in &list.ordinates {
            assert!(l_complex(Complex64::new(0.5, g), &psi).norm() < 1e-8, "j = {j}, γ = {g}");
        }
        // the two lists are the positive and negative ordinates of one another
        assert!((list.ordinates[0] - s.for_character(&chi.conj()).unwrap().ordinates[0]).abs() > 0.1);
    }
}

#[test]
fn zero_sums_contain_closed_forms() {
    let s = store();
    let zeta = character_zero_sum(&CharacterGroup::new(5).character(0), &s, Weight::W1).unwrap();
    assert!(zeta.contains(b1().value.mid()), "{zeta}");
    for d in [-3, -4, 5, 8, -8, 12, -24, 24] {
        let fd = FundamentalDiscriminant::new(d).unwrap();
        let chi = CharacterGroup::new(fd.conductor())
            .characters()
            .into_iter()
            .find(|c| c.is_real() && c.is_primitive() && c.kappa() == fd.kappa())
            .unwrap();
        let sum = character_zero_sum(&chi, &s, Weight::W1).unwrap();
        assert!(sum.contains(b_chi(fd).unwrap().value.mid()), "d = {d}: {sum}");
    }
    for j in [1, 3] {
        let chi = mod5(j);
        let sum = character_zero_sum(&chi, &s, Weight::W1).unwrap();
        let closed = primitive_bias(&chi).unwrap();
        assert!(sum.contains(closed.mid()), "j = {j}: {sum} vs {closed}");
        assert!(sum.width() < 0.05);
    }
}
