use proptest::prelude::*;

use rtkirby::census::{parse_code, print_code};
use rtkirby::exact::{Rat, QS2};

fn rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rat::new(n, d))
}

fn qs2() -> impl Strategy<Value = QS2> {
    (rat(), rat()).prop_map(|(a, b)| QS2::new(a, b))
}

fn close(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-9 * (1.0 + x.abs().max(y.abs()))
}

proptest! {
    #[test]
    fn arithmetic_agrees_with_floats(x in qs2(), y in qs2()) {
        let (fx, fy) = (x.to_f64(), y.to_f64());
        prop_assert!(close((&x + &y).to_f64(), fx + fy));
        prop_assert!(close((&x - &y).to_f64(), fx - fy));
        prop_assert!(close((&x * &y).to_f64(), fx * fy));
        if !y.is_zero() {
            prop_assert!(close(x.checked_div(&y).unwrap().to_f64(), fx / fy));
        }
    }

    #[test]
    fn sign_is_multiplicative(x in qs2(), y in qs2()) {
        prop_assert_eq!((&x * &y).sign(), x.sign() * y.sign());
        prop_assert_eq!((-&x).sign(), -x.sign());
    }

    #[test]
    fn sign_matches_float_away_from_zero(x in qs2()) {
        let f = x.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(x.sign(), if f > 0.0 { 1 } else { -1 });
        }
        prop_assert_eq!(x.sign() == 0, x.is_zero());
    }

    #[test]
    fn norm_is_multiplicative(x in qs2(), y in qs2()) {
        prop_assert_eq!((&x * &y).norm(), &x.norm() * &y.norm());
    }

    #[test]
    fn ordering_matches_subtraction(x in qs2(), y in qs2()) {
        prop_assert_eq!(x.cmp(&y) as i32, (&x - &y).sign());
    }

    #[test]
    fn qs2_print_parse_round_trip(x in qs2()) {
        prop_assert_eq!(x.to_string().parse::<QS2>().unwrap(), x.clone());
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<QS2>(&json).unwrap(), x);
    }

    #[test]
    fn rat_print_parse_round_trip(r in rat()) {
        prop_assert_eq!(r.to_string().parse::<Rat>().unwrap(), r);
    }

    #[test]
    fn code_print_parse_round_trip(code in "[1-9a-f]{6}") {
        if let Ok(ks) = parse_code(&code) {
            prop_assert_eq!(print_code(&ks), code);
        }
    }
}

#[test]
fn sqrt2_squares_to_two() {
    let s = QS2::sqrt2();
    assert_eq!(&s * &s, QS2::from_ints(2, 0));
    assert_eq!(QS2::from_ints(1, 1).recip().unwrap(), QS2::from_ints(-1, 1));
}
