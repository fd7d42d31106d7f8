use dil3_core::exact::{leq_scaled_sqrt, scaled_sqrt_lt, sign};
use dil3_core::Zr2;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small() -> impl Strategy<Value = Zr2> {
    (-100_000i64..=100_000, -100_000i64..=100_000).prop_map(|(a, b)| Zr2::new(a, b))
}

fn float(z: Zr2) -> f64 {
    z.a as f64 + z.b as f64 * std::f64::consts::SQRT_2
}

proptest! {
    #[test]
    fn ring_laws(x in small(), y in small(), z in small()) {
        prop_assert_eq!(x + y, y + x);
        prop_assert_eq!((x + y) + z, x + (y + z));
        prop_assert_eq!(x * y, y * x);
        prop_assert_eq!(x * (y + z), x * y + x * z);
        prop_assert_eq!(x + Zr2::ZERO, x);
        prop_assert_eq!(x * Zr2::ONE, x);
        prop_assert_eq!(x - x, Zr2::ZERO);
        prop_assert_eq!(x + (-x), Zr2::ZERO);
    }

    #[test]
    fn multiplication_associates(
        x in (-1000i64..=1000, -1000i64..=1000),
        y in (-1000i64..=1000, -1000i64..=1000),
        z in (-1000i64..=1000, -1000i64..=1000),
    ) {
        let (x, y, z) = (Zr2::new(x.0, x.1), Zr2::new(y.0, y.1), Zr2::new(z.0, z.1));
        prop_assert_eq!((x * y) * z, x * (y * z));
    }

    #[test]
    fn order_is_compatible(x in small(), y in small(), z in small()) {
        prop_assert_eq!(x < y, sign(y - x) > 0);
        prop_assert_eq!(x == y, sign(y - x) == 0);
        if x <= y {
            prop_assert!(x + z <= y + z);
        }
        if x <= y && y <= z {
            prop_assert!(x <= z);
        }
        // multiplying by a positive element keeps the order
        if x <= y && z.sign() > 0 {
            prop_assert!(x * z <= y * z);
        }
    }

    #[test]
    fn scaled_comparisons(l in small(), c in small(), n in 0u64..60) {
        let (l, c) = (Zr2::new(l.a.abs(), l.b.abs()), Zr2::new(c.a.abs(), c.b.abs()));
        let le = leq_scaled_sqrt(l, c, n).unwrap();
        prop_assert_eq!(le, !scaled_sqrt_lt(c, n, l).unwrap());
        let gap = float(l) - float(c) * (n as f64).sqrt();
        if gap.abs() > 1e-6 * (1.0 + float(l)) {
            prop_assert_eq!(le, gap < 0.0);
        }
    }
}

#[test]
fn sign_agrees_with_float_on_a_million_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut decided = 0;
    for _ in 0..1_000_000 {
        let z = Zr2::new(rng.gen_range(-1_000_000..=1_000_000), rng.gen_range(-1_000_000..=1_000_000));
        let f = float(z);
        if f.abs() > 1e-6 {
            assert_eq!(sign(z), f.signum() as i32, "{z}");
            decided += 1;
        }
    }
    assert!(decided > 999_000);
}

#[test]
fn sign_near_zero_follows_pell_parity() {
    // a² - 2b² = ±1 puts a - b√2 within 1/(a + b√2) of zero, on the side of
    // a² - 2b²
    let (mut a, mut b) = (1i64, 1i64);
    for _ in 0..20 {
        let norm = (a as i128) * (a as i128) - 2 * (b as i128) * (b as i128);
        assert_eq!(norm.abs(), 1);
        assert_eq!(sign(Zr2::new(a, -b)), norm.signum() as i32, "{a} - {b}√2");
        assert_eq!(sign(Zr2::new(-a, b)), -norm.signum() as i32);
        (a, b) = (a + 2 * b, a + b);
    }
}

#[test]
fn leq_scaled_sqrt_rejects_negative_sides() {
    assert!(leq_scaled_sqrt(Zr2::new(-1, 0), Zr2::ONE, 2).is_err());
    assert!(leq_scaled_sqrt(Zr2::ONE, Zr2::new(1, -1), 2).is_err());
}
