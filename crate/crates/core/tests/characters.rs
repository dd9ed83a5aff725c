use num_bigint::BigInt;
use num_rational::BigRational;

use stanley_bij::character::{
    eval_known_polynomial, expected_coeff, extract_psquarefree_coeff, normalized_character_multi, scaled_magnitude, MultiRectangular,
    KnownPolynomial,
};
use stanley_bij::stanley::{self, StanleyType};

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[test]
fn characters_match_closed_forms() {
    for which in [KnownPolynomial::Ch1, KnownPolynomial::Ch2, KnownPolynomial::Ch3, KnownPolynomial::Ch4] {
        let k = which.ch_index().unwrap();
        for p1 in 0..=3 {
            for p2 in 0..=3 {
                for q1 in 0..=3 {
                    for q2 in 0..=q1 {
                        let pq = MultiRectangular::new(vec![p1, p2], vec![q1, q2]).unwrap();
                        let got = normalized_character_multi(k, &pq);
                        let want = eval_known_polynomial(which, [p1 as i64, p2 as i64], [q1 as i64, q2 as i64]);
                        assert_eq!(got, BigRational::from_integer(want), "{which:?} at p=({p1},{p2}) q=({q1},{q2})");
                    }
                }
            }
        }
    }
}

#[test]
fn top_degree_parts_are_the_free_cumulants() {
    let pairs = [
        (KnownPolynomial::Ch1, KnownPolynomial::R2),
        (KnownPolynomial::Ch2, KnownPolynomial::R3),
        (KnownPolynomial::Ch3, KnownPolynomial::R4),
        (KnownPolynomial::Ch4, KnownPolynomial::R5),
    ];
    for (ch, r) in pairs {
        let k = ch.ch_index().unwrap() as u32;
        let mut top: Vec<_> = ch.terms().iter().filter(|(_, e)| e.iter().sum::<u32>() == k + 1).copied().collect();
        let mut want = r.terms().to_vec();
        top.sort();
        want.sort();
        assert_eq!(top, want, "{ch:?}");
    }
}

#[test]
fn ch4_minus_r5_is_the_low_degree_remainder() {
    for p in [[1, 2], [0, 3], [2, 2]] {
        for q in [[3, 1], [2, 2], [5, 0]] {
            let diff = eval_known_polynomial(KnownPolynomial::Ch4, p, q) - eval_known_polynomial(KnownPolynomial::R5, p, q);
            let [p1, p2] = p;
            let [q1, q2] = q;
            let rem = -5 * p1 * p1 * q1 + 5 * p1 * q1 * q1 - 10 * p1 * p2 * q2 - 5 * p2 * p2 * q2 + 5 * p2 * q2 * q2;
            assert_eq!(diff, BigInt::from(rem));
        }
    }
}

#[test]
fn small_squarefree_coefficients() {
    assert_eq!(extract_psquarefree_coeff(3, &[1, 1]).unwrap(), rat(-3));
    assert_eq!(extract_psquarefree_coeff(4, &[2, 1]).unwrap(), rat(-4));
    assert_eq!(extract_psquarefree_coeff(4, &[1, 2]).unwrap(), rat(-4));
}

/// Every p-square-free coefficient with two rectangles, read off the closed forms.
#[test]
fn squarefree_coefficients_agree_with_the_table() {
    for which in [KnownPolynomial::Ch2, KnownPolynomial::Ch3, KnownPolynomial::Ch4] {
        let k = which.ch_index().unwrap();
        for b1 in 0..=k - 1 {
            let b2 = k - 1 - b1;
            let want: i64 =
                which.terms().iter().filter(|(_, e)| *e == [1, b1 as u32, 1, b2 as u32]).map(|(c, _)| *c).sum();
            assert_eq!(extract_psquarefree_coeff(k, &[b1, b2]).unwrap(), rat(want), "k={k} b=({b1},{b2})");
        }
    }
}

#[test]
fn squarefree_coefficient_is_minus_k_power_and_counts_trees() {
    for k in 1..=6 {
        for n in 1..=3 {
            for bt in StanleyType::all_with(k, n, 1) {
                let c = extract_psquarefree_coeff(k, &bt.b).unwrap();
                assert_eq!(c, BigRational::from_integer(expected_coeff(k, n)), "k={k} b={:?}", bt.b);
                let trees = stanley::enumerate(&bt).unwrap().len();
                assert_eq!(scaled_magnitude(&c, k).unwrap(), trees.into(), "k={k} b={:?}", bt.b);
            }
        }
    }
}
