//! Property tests over randomly drawn parameters.

use proptest::prelude::*;

use tailasym::asymptotics::{nfold_exponent, product_constants};
use tailasym::numeric::generalized_inverse;
use tailasym::regvar::RegVarFn;
use tailasym::risk::TailModel;

fn rate() -> impl Strategy<Value = f64> {
    0.1f64..5.0
}

fn power() -> impl Strategy<Value = f64> {
    0.3f64..4.0
}

proptest! {
    #[test]
    fn product_constants_identities(
        p1 in power(), l1 in rate(), p2 in power(), l2 in rate(),
        u in 1.0f64..1e6,
    ) {
        let c = product_constants(p1, l1, p2, l2).unwrap();
        // defining relation of B
        let b = l1 * c.a.powf(-p1) + l2 * c.a.powf(p2);
        prop_assert!((c.b / b - 1.0).abs() < 1e-12);
        // exponent power
        prop_assert!((c.p_star - p1 * p2 / (p1 + p2)).abs() < 1e-12 * c.p_star);
        // the saddle value is the minimum of L1 x^{p1} + L2 (u/x)^{p2}
        let f = |x: f64| l1 * x.powf(p1) + l2 * (u / x).powf(p2);
        let x_saddle = u / c.c_u(u);
        let f_min = c.b * u.powf(c.p_star);
        prop_assert!(f(x_saddle) <= f_min * (1.0 + 1e-10));
        for mult in [0.5, 0.9, 1.1, 2.0] {
            prop_assert!(f(x_saddle * mult) >= f_min * (1.0 - 1e-10));
        }
        // two-factor n-fold identity
        let nf = nfold_exponent(&[p1, p2]).unwrap();
        prop_assert!((nf / c.p_star - 1.0).abs() < 1e-12);
    }

    #[test]
    fn weibullian_log_tail_is_nonincreasing_and_nonpositive(
        l in rate(), p in power(), scale in 0.2f64..5.0, index in -2.0f64..0.0,
    ) {
        let g = RegVarFn::power(scale, index).unwrap();
        let m = TailModel::weibullian(g, l, p).unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let u = 1e-2 * (1e4f64 / 1e-2).powf(i as f64 / 199.0);
            let v = m.log_tail(u).unwrap();
            prop_assert!(v <= 0.0);
            prop_assert!(v <= prev + 1e-10);
            prev = v;
        }
        // log-Weibullian limit: log_tail(u)/u^p -> -L, at the rate set by
        // the prefactor, |log g(u)| / u^p
        let mut prev_gap = f64::INFINITY;
        for u in [1e4f64, 1e6, 1e8] {
            let lim = m.log_tail(u).unwrap() / u.powf(p);
            let gap = (lim + l).abs();
            let bound =
                (scale.ln().abs() + index.abs() * u.ln()) / u.powf(p) + 1e-12 * (1.0 + l);
            prop_assert!(gap <= bound, "u={u}: gap {gap} bound {bound}");
            prop_assert!(gap < prev_gap + 1e-15, "u={u}: not converging");
            prev_gap = gap;
        }
    }

    #[test]
    fn generalized_inverse_is_an_infimum(l in rate(), p in power(), q in 0.01f64..0.999) {
        // on the completed cdf of a Weibullian model the generalized inverse
        // never overshoots the true quantile
        let m = TailModel::pure_weibullian(l, p).unwrap();
        let x = m.quantile(q).unwrap();
        let cdf = |v: f64| m.cdf(v);
        let x2 = generalized_inverse(cdf, q, (0.0, f64::INFINITY)).unwrap();
        prop_assert!((x - x2).abs() <= 1e-8 * (1.0 + x.abs()));
        prop_assert!(m.cdf(x * (1.0 + 1e-9) + 1e-12) >= q - 1e-9);
    }

    #[test]
    fn sampled_values_respect_support(l in rate(), p in power(), seed in 0u64..1000) {
        use rand::SeedableRng;
        let m = TailModel::pure_weibullian(l, p).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for x in m.sample(64, &mut rng).unwrap() {
            prop_assert!(x.is_finite() && x >= 0.0);
        }
    }
}
