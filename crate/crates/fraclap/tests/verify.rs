use fraclap::verify::{self, subordinator};
use fraclap_core::{Channel, QuadratureConfig, RadialFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

#[test]
fn gsr_examples_close() {
    let u = RadialFunction::standard_bump();
    for (d, ell, alpha, sigma) in [(3, 0, 1.0, 1.0), (1, 1, 1.0, 0.0), (3, 1, 2.0, 0.0), (2, 2, 0.5, -1.5)] {
        let c = Channel::new(d, ell).unwrap();
        let r = verify::gsr_residual(c, alpha, sigma, &u, &cfg());
        assert!(r.pass, "{r}");
    }
}

#[test]
fn alpha2_identity_examples() {
    let u = RadialFunction::standard_bump();
    for (d, sigma) in [(3, 0.5), (2, -0.3), (1, 0.7)] {
        let r = verify::alpha2_identity_check(d, sigma, &u, &cfg());
        assert!(r.pass, "{r}");
    }
}

#[test]
fn higher_channels_have_larger_quotients() {
    let u = RadialFunction::bump_with_polynomial(0.6, 1.8, &[1.0, 0.3]).unwrap();
    let q: Vec<f64> = (0..3)
        .map(|ell| verify::hardy_quotient(Channel::new(3, ell).unwrap(), 1.0, &u, &cfg()).unwrap())
        .collect();
    assert!(q[0] < q[1] && q[1] < q[2], "{q:?}");
}

#[test]
fn random_bumps_are_reproducible() {
    let draw = || {
        let mut rng = ChaCha8Rng::seed_from_u64(verify::forms::BUMP_SEED);
        (0..3)
            .map(|_| {
                let u = verify::random_bump(&mut rng);
                let (a, b) = u.support();
                (a, b, u.eval(0.5 * (a + b)))
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(draw(), draw());
}

// Frozen max/min ratios of the scaled subordinator density over [1e-3, 1e3].
#[test]
fn corridor_spreads_are_frozen() {
    for (alpha, spread) in [
        (0.3, 2.2075206912231966),
        (0.5, 1.8784416283612688),
        (1.0, 1.2840254166877503),
        (1.5, 2.3781723113085427),
        (1.8, 9.559319443861291),
    ] {
        let got = subordinator::corridor_spread(alpha).unwrap();
        assert!(((got - spread) / spread).abs() < 1e-9, "alpha={alpha}: {got}");
        assert!(got <= subordinator::CORRIDOR_BOUND);
    }
}

#[test]
fn plateau_trend_cells_pass() {
    let spectrum = verify::PlateauSpectrum::new();
    for (d, l, a) in verify::forms::PLATEAU_CELLS {
        for r in verify::forms::plateau_trend(&spectrum, Channel::new(d, l).unwrap(), a, &cfg()) {
            println!("{r}");
            assert!(r.pass, "{r}");
        }
    }
}
