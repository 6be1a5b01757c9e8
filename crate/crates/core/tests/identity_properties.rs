use proptest::prelude::*;
use trijac::arith::{rat_from_int, Rational};
use trijac::engines::{term_iter, SequenceId};
use trijac::identities::{lhs_pp4, rhs_catalan, rhs_docagne, rhs_pp4, sum_k};

fn k(n: i64) -> trijac::Integer {
    term_iter(SequenceId::K3, n as u64)
}

#[test]
fn catalan_at_one_is_cassini() {
    for n in 1..=300i64 {
        let m = |i: i64| if i.rem_euclid(3) == 0 { 2 } else { -1 };
        let cassini = Rational::new(trijac::arith::pow2(n as u64), 2.into())
            * rat_from_int(3 * m(n + 2) - 5 * m(n))
            - rat_from_int(3);
        assert_eq!(rhs_catalan(n, 1).unwrap(), cassini, "n = {n}");
    }
}

proptest! {
    #[test]
    fn catalan_matches_terms(n in 0i64..400, frac in 0.0f64..=1.0) {
        let s = ((n as f64) * frac) as i64;
        let lhs = k(n + s) * k(n - s) - k(n) * k(n);
        prop_assert_eq!(rhs_catalan(n, s).unwrap(), Rational::from_integer(lhs));
    }

    #[test]
    fn docagne_matches_terms(m in 0i64..400, n in 0i64..400) {
        let (m, n) = if m >= n { (m, n) } else { (n, m) };
        prop_assert_eq!(rhs_docagne(m, n).unwrap(), k(m + 1) * k(n) - k(m) * k(n + 1));
    }

    #[test]
    fn pp4_sides_agree(n in 0u64..300, m in 0u64..300) {
        prop_assert_eq!(lhs_pp4(n, m), rhs_pp4(n, m));
    }

    #[test]
    fn sums_split_additively(a in -50i64..50, len1 in 0i64..40, len2 in 1i64..40) {
        let b = a + len1;
        let c = b + len2;
        prop_assert_eq!(sum_k(a, b).unwrap() + sum_k(b + 1, c).unwrap(), sum_k(a, c).unwrap());
    }
}
