mod common;

use common::*;
use klrel::functions::{eval_j, eval_k, eval_k_tilde, eval_l, eval_l_tilde, eval_l_via_7f6};
use klrel::group::{structure, CosetId, GroupElement, Side};
use klrel::point::TwiddleParams;
use klrel::relations::Sampler;
use klrel::series::SeriesOptions;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-8;

fn small_twiddle(rng: &mut impl Rng) -> TwiddleParams {
    TwiddleParams(std::array::from_fn(|_| Complex64::new(rng.gen_range(-0.2..0.2), rng.gen_range(-0.1..0.1))))
}

#[test]
fn generators_lie_in_their_subgroups() {
    let st = structure();
    for (side, home) in [(Side::K, CosetId::p(0)), (Side::L, CosetId::l(6))] {
        for (name, g) in invariance_generators(side) {
            assert_eq!(st.act(home, &g), Some(home), "{name} fixes the identity coset");
        }
    }
}

#[test]
fn k_invariant_under_gk_generators() {
    for (i, (name, g)) in invariance_generators(Side::K).iter().enumerate() {
        let err = max_invariance_error(Side::K, g, 20, 100 + i as u64);
        assert!(err < TOL, "K not invariant under {name}: {err:e}");
    }
}

#[test]
fn l_invariant_under_gl_generators() {
    for (i, (name, g)) in invariance_generators(Side::L).iter().enumerate() {
        let err = max_invariance_error(Side::L, g, 20, 200 + i as u64);
        assert!(err < TOL, "L not invariant under {name}: {err:e}");
    }
}

#[test]
fn k_is_not_invariant_under_w0() {
    let st = structure();
    let x = pulled_back_arguments(Side::K, &[&GroupElement::identity(), st.w0()]).sample_many(1, 3).unwrap()[0];
    assert!(rel_err(eval_k(&st.w0().apply(&x)).unwrap(), eval_k(&x).unwrap()) > 1e-3);
}

#[test]
fn k_tilde_symmetric_in_all_six_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let t = small_twiddle(&mut rng);
        let mut perm = t.0;
        perm.shuffle(&mut rng);
        let base = eval_k_tilde(&t).unwrap();
        assert_eq!(base, eval_k(&t.to_point()).unwrap());
        assert!(rel_err(eval_k_tilde(&TwiddleParams(perm)).unwrap(), base) < TOL);
    }
}

#[test]
fn l_tilde_symmetric_under_even_sign_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let t = small_twiddle(&mut rng);
        let mut tail = [t.0[1], t.0[2], t.0[3], t.0[4], t.0[5]];
        tail.shuffle(&mut rng);
        let mut flips: [bool; 5] = std::array::from_fn(|_| rng.gen());
        if flips.iter().filter(|&&f| f).count() % 2 == 1 {
            flips[0] = !flips[0];
        }
        let mut moved = t.0;
        for (i, (v, flip)) in tail.iter().zip(flips).enumerate() {
            moved[i + 1] = if flip { -v } else { *v };
        }
        let base = eval_l_tilde(&t).unwrap();
        assert!(rel_err(eval_l_tilde(&TwiddleParams(moved)).unwrap(), base) < TOL);
    }
}

#[test]
fn l_tilde_changes_under_odd_sign_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let t = small_twiddle(&mut rng);
    let mut moved = t.0;
    moved[3] = -moved[3];
    assert!(rel_err(eval_l_tilde(&TwiddleParams(moved)).unwrap(), eval_l_tilde(&t).unwrap()) > 1e-4);
}

#[test]
fn j_is_independent_of_representative() {
    let st = structure();
    for id in CosetId::all() {
        let members = st.coset_members(id);
        let (r1, r2) = (members[0], members[members.len() / 2]);
        assert_ne!(r1, r2);
        let points = pulled_back_arguments(id.side(), &[r1, r2]).sample_many(20, 300 + id.index() as u64).unwrap();
        for x in &points {
            let (v1, v2) = (eval_side(id.side(), &r1.apply(x)), eval_side(id.side(), &r2.apply(x)));
            assert!(rel_err(v2, v1) < TOL, "{id}: {:e}", rel_err(v2, v1));
        }
    }
}

#[test]
fn j_at_the_named_cosets() {
    let st = structure();
    let w0 = st.w0();
    let sampler = pulled_back_arguments(Side::K, &[&GroupElement::identity(), w0]);
    for x in sampler.sample_many(5, 21).unwrap() {
        assert!(rel_err(eval_j(CosetId::p(0), &x).unwrap(), eval_k(&x).unwrap()) < TOL);
        assert!(rel_err(eval_j(CosetId::n(0), &x).unwrap(), eval_k(&w0.apply(&x)).unwrap()) < TOL);
        let [a, b, c, d, e, f, g] = x.coords();
        let one = Complex64::new(1.0, 0.0);
        let explicit = [one - a, one - b, one - c, one - d, 2.0 - e, 2.0 - f, 2.0 - g];
        for (u, v) in w0.apply(&x).coords().iter().zip(explicit) {
            assert!((u - v).norm() < 1e-14);
        }
    }
    for x in Sampler::from_forms(klrel::functions::l_series_arguments().to_vec()).sample_many(5, 22).unwrap() {
        assert!(rel_err(eval_j(CosetId::l(6), &x).unwrap(), eval_l(&x).unwrap()) < TOL);
    }
}

#[test]
fn l_agrees_with_very_well_poised_form() {
    let opts = SeriesOptions::default();
    for x in vwp_points(10, 31) {
        let direct = eval_l(&x).unwrap();
        let vwp = eval_l_via_7f6(&x, &opts).unwrap();
        assert!(rel_err(vwp, direct) < 1e-6, "{:e}", rel_err(vwp, direct));
    }
}

/// Greedy matching of two value lists up to relative `tol`.
fn same_multiset(mut left: Vec<Complex64>, right: Vec<Complex64>, tol: f64) -> bool {
    left.len() == right.len()
        && right.iter().all(|v| match left.iter().position(|u| rel_err(*u, *v) < tol) {
            Some(i) => {
                left.swap_remove(i);
                true
            }
            None => false,
        })
}

#[test]
fn even_sign_changes_of_k_tilde_give_every_k_coset() {
    let t = TwiddleParams([0.05, -0.11, 0.07, 0.13, -0.02, 0.09].map(|v| Complex64::new(v, 0.04)));
    let x = t.to_point();
    let tilde: Vec<Complex64> = (0u32..64)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| {
            let flipped = std::array::from_fn(|i| if m >> i & 1 == 1 { -t.0[i] } else { t.0[i] });
            eval_k_tilde(&TwiddleParams(flipped)).unwrap()
        })
        .collect();
    let cosets: Vec<Complex64> = CosetId::k_side().map(|id| eval_j(id, &x).unwrap()).collect();
    assert!(same_multiset(tilde, cosets, TOL));
}

/// `w0` is `t ↦ -t`; modulo even sign changes of the trailing five, the
/// barred cosets carry `-x_i` and one further sign change.
#[test]
fn signed_leading_parameter_of_l_tilde_gives_every_l_coset() {
    let t = TwiddleParams([0.05, -0.11, 0.07, 0.13, -0.02, 0.09].map(|v| Complex64::new(v, 0.04)));
    let x = t.to_point();
    let mut tilde = Vec::new();
    for i in 0..6 {
        for sign in [1.0, -1.0] {
            let mut moved = vec![t.0[i] * sign];
            moved.extend((0..6).filter(|&j| j != i).map(|j| t.0[j]));
            moved[5] *= sign;
            tilde.push(eval_l_tilde(&TwiddleParams(std::array::from_fn(|k| moved[k]))).unwrap());
        }
    }
    let cosets: Vec<Complex64> = CosetId::l_side().map(|id| eval_j(id, &x).unwrap()).collect();
    assert!(same_multiset(tilde, cosets, TOL));
}
