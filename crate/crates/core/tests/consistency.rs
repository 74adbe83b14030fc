//! Deterministic cross-module consistency gates.

use superinv::invariants::{
    invariant_space_bruteforce, isotypic_invariant_dim, span_rank, Caps, InvariantSetting,
};
use superinv::liesuper::{build_family, FamilyTag};
use superinv::superalg::{cauchy_sides, p_t, pf_t, PairFamily};
use superinv::supercomb::{
    enumerate_partitions, enumerate_semistandard, enumerate_standard_tableaux, IndexRange, Partition, YoungTableau,
};
use superinv::symgroup::SymmetrizerVariant;

fn r(a: usize, b: usize) -> IndexRange {
    IndexRange::new(a, b)
}

fn ranges(max: IndexRange) -> Vec<IndexRange> {
    (0..=max.even).flat_map(|a| (0..=max.odd).map(move |b| r(a, b))).collect()
}

#[test]
fn dimension_identity_through_degree_five() {
    for u in ranges(r(2, 2)) {
        for w in ranges(r(2, 2)) {
            for n in 0..=5 {
                let (lhs, rhs) = cauchy_sides(u, w, n);
                assert_eq!(lhs, rhs, "U={u} W={w} N={n}");
            }
        }
    }
}

#[test]
fn determinantal_family_is_independent() {
    for n in 1..=4 {
        for p in enumerate_partitions(n, None, None) {
            let t = YoungTableau::row_filled(&p);
            for u in [r(1, 1), r(2, 1), r(1, 0)] {
                for w in [r(1, 1), r(2, 1), r(2, 0)] {
                    let is = enumerate_semistandard(&t, u);
                    let js = enumerate_semistandard(&t, w);
                    let polys: Vec<_> = is
                        .iter()
                        .flat_map(|i| js.iter().map(move |j| (i, j)))
                        .map(|(i, j)| p_t(&t, i, j, SymmetrizerVariant::Plain, PairFamily::Uw, 100_000).unwrap())
                        .collect();
                    assert_eq!(span_rank(&polys), polys.len(), "{t} U={u} W={w}");
                }
            }
        }
    }
}

#[test]
fn even_pfaffians_are_independent() {
    for parts in [vec![2], vec![4], vec![2, 2]] {
        let t = YoungTableau::row_filled(&Partition::new(parts).unwrap());
        for w in [r(1, 1), r(2, 1), r(1, 2), r(2, 0)] {
            let polys: Vec<_> = enumerate_semistandard(&t, w).iter().map(|i| pf_t(&t, i, 100_000).unwrap()).collect();
            assert_eq!(span_rank(&polys), polys.len(), "{t} W={w}");
        }
    }
}

#[test]
fn hom_spaces_have_dimension_at_most_one() {
    let sl = build_family(FamilyTag::Sl, r(1, 1)).unwrap();
    let shapes: Vec<Partition> = (1..=3).flat_map(|n| enumerate_partitions(n, None, None)).collect();
    let mut seen_one = 0;
    for l in &shapes {
        for m in &shapes {
            let t = &enumerate_standard_tableaux(l)[0];
            let s = &enumerate_standard_tableaux(m)[0];
            let d = isotypic_invariant_dim(&sl, t, s, 100_000).unwrap();
            assert!(d <= 1, "λ={l} μ={m}: {d}");
            seen_one += d;
        }
    }
    assert!(seen_one > 0);
}

#[test]
fn oracle_ignores_basis_order() {
    let cases = [
        (FamilyTag::Gl, r(1, 1), r(1, 1), r(1, 1), 2),
        (FamilyTag::Sl, r(1, 1), r(1, 1), r(1, 1), 2),
        (FamilyTag::Osp, r(1, 2), r(0, 0), r(2, 1), 2),
        (FamilyTag::Pe, r(1, 1), r(0, 0), r(2, 1), 3),
    ];
    for (tag, v, u, w, d) in cases {
        let st = InvariantSetting::mixed(tag, v, u, w).unwrap();
        let a = invariant_space_bruteforce(&st, d, &Caps::default()).unwrap();
        let again = invariant_space_bruteforce(&st, d, &Caps::default()).unwrap();
        assert_eq!(a.basis, again.basis);
        let mut rev = st.clone();
        rev.family.basis.reverse();
        let b = invariant_space_bruteforce(&rev, d, &Caps::default()).unwrap();
        assert_eq!(a.dim(), b.dim(), "{tag} {v}");
        let mut both = a.basis.clone();
        both.extend(b.basis.iter().cloned());
        assert_eq!(span_rank(&both), a.dim());
    }
}
