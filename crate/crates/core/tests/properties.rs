//! Randomized algebra-kernel identities. Every suite runs 256 cases from a
//! fixed seed, so failures replay exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use superinv::linalg::{bareiss_rank, rank_of, to_dense_int, RatVec, RowReducer};
use superinv::liesuper::{build_family, FamilyTag, MatrixElement};
use superinv::superalg::{p_t, AlgebraKind, Generator, PairFamily, Polynomial};
use superinv::supercomb::{
    enumerate_semistandard, enumerate_standard_tableaux, koszul, IndexRange, Parity, SuperIndex,
    YoungTableau,
};
use superinv::symgroup::{
    act_on_sequence, apply_to_combination, apply_to_word, cocycle, young_symmetrizer, GroupAlgebraElement,
    Permutation, SymmetrizerVariant,
};

const SEED: u64 = 0x5eed_2024;

fn cfg() -> Config {
    Config { cases: 256, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn index(range: IndexRange) -> impl Strategy<Value = SuperIndex> {
    prop::sample::select(range.indices())
}

fn permutation(k: usize) -> impl Strategy<Value = Permutation> {
    Just((0..k).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn sequence_and_perms(max: usize) -> impl Strategy<Value = (Vec<SuperIndex>, Permutation, Permutation)> {
    (1..=max).prop_flat_map(|k| {
        (prop::collection::vec(index(IndexRange::new(2, 2)), k), permutation(k), permutation(k))
    })
}

fn mixed_generators() -> Vec<Generator> {
    AlgebraKind::Mixed { v: IndexRange::new(2, 1), u: IndexRange::new(1, 1), w: IndexRange::new(1, 1) }.generators()
}

fn monomial_poly() -> impl Strategy<Value = Polynomial> {
    (prop::collection::vec(prop::sample::select(mixed_generators()), 0..4), -3i64..=3)
        .prop_map(|(g, c)| Polynomial::product(&g, q(c)))
}

/// Random polynomial, optionally kept to one parity.
fn polynomial(parity: Option<Parity>) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(monomial_poly(), 0..4).prop_map(move |ps| {
        let mut out = Polynomial::zero();
        for p in ps {
            if parity.is_none() || p.parity() == parity || p.is_zero() {
                out.add_assign(&p);
            }
        }
        out
    })
}

fn homogeneous_pair() -> impl Strategy<Value = (Polynomial, Polynomial)> {
    (any::<bool>(), any::<bool>()).prop_flat_map(|(a, b)| {
        (polynomial(Some(Parity::from_bit(a as u8))), polynomial(Some(Parity::from_bit(b as u8))))
    })
}

fn parity_of(p: &Polynomial) -> Parity {
    p.parity().unwrap_or(Parity::Even)
}

fn sign_q(s: i32) -> BigRational {
    q(s as i64)
}

/// Homogeneous element of `gl(2|1)` with small random entries.
fn gl_element() -> impl Strategy<Value = MatrixElement> {
    let v = IndexRange::new(2, 1);
    (any::<bool>(), prop::collection::vec((index(v), index(v), -2i64..=2), 1..4)).prop_map(move |(odd, entries)| {
        let mut x = MatrixElement::zero(v);
        for (r, c, k) in entries {
            if (r.parity + c.parity).is_odd() == odd {
                x = x.add(&MatrixElement::unit(v, r, c).scale(&q(k)));
            }
        }
        x
    })
}

fn matrix_parity(x: &MatrixElement) -> Parity {
    x.parity().expect("homogeneous")
}

fn standard_tableau(max: usize) -> impl Strategy<Value = YoungTableau> {
    let tableaux: Vec<YoungTableau> = (1..=max)
        .flat_map(|n| superinv::supercomb::enumerate_partitions(n, None, None))
        .flat_map(|p| enumerate_standard_tableaux(&p))
        .collect();
    prop::sample::select(tableaux)
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn from_word(w: &[SuperIndex]) -> std::collections::BTreeMap<Vec<SuperIndex>, BigRational> {
    std::iter::once((w.to_vec(), q(1))).collect()
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn supercommutativity((f, g) in homogeneous_pair()) {
        let s = sign_q(koszul(parity_of(&f), parity_of(&g)));
        prop_assert!(f.mul(&g).sub(&g.mul(&f).scale(&s)).is_zero());
    }

    #[test]
    fn generators_supercommute(a in prop::sample::select(mixed_generators()), b in prop::sample::select(mixed_generators())) {
        let ab = Polynomial::product(&[a, b], q(1));
        let ba = Polynomial::product(&[b, a], q(1));
        prop_assert_eq!(ab, ba.scale(&sign_q(koszul(a.parity, b.parity))));
        if a == b && a.parity.is_odd() {
            prop_assert!(Polynomial::product(&[a, a], q(1)).is_zero());
        }
    }

    #[test]
    fn associativity_and_distributivity(f in polynomial(None), g in polynomial(None), h in polynomial(None)) {
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.add(&g).mul(&h), f.mul(&h).add(&g.mul(&h)));
    }

    #[test]
    fn cocycle_identity((seq, a, b) in sequence_and_perms(6)) {
        // c(I, ab) = c(I, a) c(a^{-1} I, b)
        let moved = act_on_sequence(&a.inverse(), &seq).unwrap();
        let lhs = cocycle(&seq, &a.compose(&b)).unwrap();
        let rhs = cocycle(&seq, &a).unwrap() * cocycle(&moved, &b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn group_algebra_acts_on_words((seq, a, b) in sequence_and_perms(6)) {
        let ga = GroupAlgebraElement::from_permutation(a.clone());
        let gb = GroupAlgebraElement::from_permutation(b.clone());
        let direct = apply_to_word(&ga.mul(&gb), &seq).unwrap();
        let stepwise = apply_to_combination(&ga, &apply_to_word(&gb, &seq).unwrap()).unwrap();
        prop_assert_eq!(direct, stepwise);
        let id = apply_to_word(&GroupAlgebraElement::identity(seq.len()), &seq).unwrap();
        prop_assert_eq!(id, from_word(&seq));
    }

    #[test]
    fn symmetrizer_quasi_idempotence(t in standard_tableau(5), tilde in any::<bool>()) {
        let variant = if tilde { SymmetrizerVariant::Tilde } else { SymmetrizerVariant::Plain };
        let e = young_symmetrizer(&t, variant, 1_000_000).unwrap();
        let f = enumerate_standard_tableaux(t.shape()).len() as i64;
        let c = q(factorial(t.size()) / f);
        prop_assert_eq!(e.mul(&e), e.scale(&c));
    }

    #[test]
    fn bracket_representation_compatibility(x in gl_element(), y in gl_element(), f in polynomial(None)) {
        let s = sign_q(koszul(matrix_parity(&x), matrix_parity(&y)));
        let lhs = x.bracket(&y).act_on_polynomial(&f);
        let rhs = x.act_on_polynomial(&y.act_on_polynomial(&f)).sub(&y.act_on_polynomial(&x.act_on_polynomial(&f)).scale(&s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_is_a_superderivation(x in gl_element(), (f, g) in homogeneous_pair()) {
        let s = sign_q(koszul(matrix_parity(&x), parity_of(&f)));
        let lhs = x.act_on_polynomial(&f.mul(&g));
        let rhs = x.act_on_polynomial(&f).mul(&g).add(&f.mul(&x.act_on_polynomial(&g)).scale(&s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn row_reducer_agrees_with_bareiss(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 0..7)) {
        let vecs: Vec<RatVec> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, q(v))).collect())
            .collect();
        let dense: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let rank = rank_of(&vecs);
        prop_assert_eq!(rank, bareiss_rank(&dense));
        prop_assert_eq!(rank, bareiss_rank(&to_dense_int(&vecs, 5)));
        let mut red = RowReducer::new();
        for v in &vecs {
            red.insert_rational(v);
        }
        let null = red.nullspace(5);
        prop_assert_eq!(null.len() + rank, 5);
        for n in &null {
            for v in &vecs {
                let dot: BigRational = v.iter().filter_map(|(i, a)| n.get(i).map(|b| a * b)).sum();
                prop_assert_eq!(dot, q(0));
            }
        }
    }

    #[test]
    fn p_t_relabeling_covariance(t in standard_tableau(4), seed in any::<u64>()) {
        let d = t.size();
        let range = IndexRange::new(1, 1);
        let all = superinv::tensorspace::all_sequences(range, d);
        let i = &all[(seed % all.len() as u64) as usize];
        let j = &all[((seed / 7) % all.len() as u64) as usize];
        let perms = superinv::symgroup::all_permutations(d);
        let sigma = &perms[((seed / 49) % perms.len() as u64) as usize];
        let base = p_t(&t, i, j, SymmetrizerVariant::Plain, PairFamily::Uw, 100_000).unwrap();
        let si = act_on_sequence(sigma, i).unwrap();
        let sj = act_on_sequence(sigma, j).unwrap();
        let moved = p_t(&t.relabel(sigma), &si, &sj, SymmetrizerVariant::Plain, PairFamily::Uw, 100_000).unwrap();
        let inv = sigma.inverse();
        let sign = cocycle(i, &inv).unwrap() * cocycle(j, &inv).unwrap();
        prop_assert_eq!(moved, base.scale(&sign_q(sign)));
    }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn family_brackets_close_and_satisfy_jacobi(tag in 0usize..5, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), c in any::<prop::sample::Index>()) {
        let (tag, v) = [
            (FamilyTag::Gl, IndexRange::new(2, 1)),
            (FamilyTag::Sl, IndexRange::new(2, 1)),
            (FamilyTag::Osp, IndexRange::new(1, 2)),
            (FamilyTag::Pe, IndexRange::new(2, 2)),
            (FamilyTag::Spe, IndexRange::new(2, 2)),
        ][tag];
        let fam = build_family(tag, v).unwrap();
        let x = a.get(&fam.basis);
        let y = b.get(&fam.basis);
        let z = c.get(&fam.basis);
        prop_assert!(fam.contains(&x.bracket(y)));
        let (px, py, pz) = (matrix_parity(x), matrix_parity(y), matrix_parity(z));
        let jac = x.bracket(&y.bracket(z)).scale(&sign_q(koszul(px, pz)))
            .add(&y.bracket(&z.bracket(x)).scale(&sign_q(koszul(py, px))))
            .add(&z.bracket(&x.bracket(y)).scale(&sign_q(koszul(pz, py))));
        prop_assert!(jac.is_zero());
    }
}

#[test]
fn symmetrizers_quasi_idempotent_through_six_cells() {
    for n in 1..=6 {
        for p in superinv::supercomb::enumerate_partitions(n, None, None) {
            let tabs = enumerate_standard_tableaux(&p);
            let c = q(factorial(n) / tabs.len() as i64);
            // one tableau per shape; the constant depends only on the shape
            let t = &tabs[tabs.len() / 2];
            for variant in [SymmetrizerVariant::Plain, SymmetrizerVariant::Tilde] {
                let e = young_symmetrizer(t, variant, 1_000_000).unwrap();
                assert_eq!(e.mul(&e), e.scale(&c), "{p} {variant:?}");
            }
        }
    }
}

#[test]
fn semistandard_words_are_independent() {
    for n in 1..=4 {
        for p in superinv::supercomb::enumerate_partitions(n, None, None) {
            for t in enumerate_standard_tableaux(&p) {
                let e = young_symmetrizer(&t, SymmetrizerVariant::Plain, 100_000).unwrap();
                for range in [IndexRange::new(1, 1), IndexRange::new(2, 1), IndexRange::new(1, 2)] {
                    let seqs = enumerate_semistandard(&t, range);
                    let mut index = std::collections::BTreeMap::new();
                    let vecs: Vec<RatVec> = seqs
                        .iter()
                        .map(|s| {
                            apply_to_word(&e, s)
                                .unwrap()
                                .into_iter()
                                .map(|(w, c)| {
                                    let k = index.len();
                                    (*index.entry(w).or_insert(k), c)
                                })
                                .collect()
                        })
                        .collect();
                    assert_eq!(rank_of(&vecs), seqs.len(), "{t} over {range}");
                }
            }
        }
    }
}

#[test]
fn semistandard_empty_exactly_outside_the_hook() {
    for n in 1..=6 {
        for p in superinv::supercomb::enumerate_partitions(n, None, None) {
            let t = YoungTableau::row_filled(&p);
            for (a, b) in [(0, 1), (1, 0), (1, 1), (2, 1), (1, 2), (2, 2)] {
                let empty = enumerate_semistandard(&t, IndexRange::new(a, b)).is_empty();
                assert_eq!(empty, p.part(a) > b, "{p} over ({a}|{b})");
            }
        }
    }
}
