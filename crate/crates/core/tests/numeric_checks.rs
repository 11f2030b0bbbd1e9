use crankforge::numeric::{
    check_e2_anomaly, check_modularity, check_transformation, sample_gamma0_pair, sample_tau,
    DEFAULT_TOLERANCE,
};
use crankforge::{GammaElement, HalfPlanePoint, ModularForm};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn e2_anomaly_examples() {
    for (re, im) in [(0.0, 2.0), (0.5, 2.0), (0.3, 1.1)] {
        let tau = HalfPlanePoint::new(re, im).unwrap();
        assert!(check_e2_anomaly(&tau, 200, DEFAULT_TOLERANCE, true).unwrap().pass);
        assert!(!check_e2_anomaly(&tau, 200, DEFAULT_TOLERANCE, false).unwrap().pass);
    }
}

#[test]
fn e2_anomaly_at_sampled_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let tau = sample_tau(&mut rng);
        let r = check_e2_anomaly(&tau, 200, DEFAULT_TOLERANCE, true).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn level_one_modularity() {
    let tau = HalfPlanePoint::new(0.0, 2.0).unwrap();
    let e4 = ModularForm::eisenstein(4, 1, 200);
    for g in [GammaElement::translation(), GammaElement::inversion()] {
        assert!(check_modularity(&e4, &g, &tau, DEFAULT_TOLERANCE).unwrap().pass);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for w in [4, 6] {
        let f = ModularForm::eisenstein(w, 1, 200);
        for _ in 0..20 {
            let (g, tau) = sample_gamma0_pair(&mut rng, 1, 10);
            let r = check_modularity(&f, &g, &tau, DEFAULT_TOLERANCE).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }
}

#[test]
fn raised_level() {
    let f = ModularForm::eisenstein(4, 2, 200);
    let g = GammaElement::new(1, 0, 2, 1).unwrap();
    let tau = HalfPlanePoint::new(0.0, 1.0).unwrap();
    assert!(check_modularity(&f, &g, &tau, DEFAULT_TOLERANCE).unwrap().pass);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in 2..=4 {
        let f = ModularForm::eisenstein(4, d, 200);
        for _ in 0..10 {
            let (g, tau) = sample_gamma0_pair(&mut rng, d, 10);
            let r = check_modularity(&f, &g, &tau, DEFAULT_TOLERANCE).unwrap();
            assert!(r.pass, "d = {d}: {r:?}");
        }
    }
}

#[test]
fn outside_the_level_fails() {
    let tau = HalfPlanePoint::new(0.1, 1.2).unwrap();
    for d in 2..=4 {
        let f = ModularForm::eisenstein(4, d, 200);
        let r = check_transformation(&f, &GammaElement::inversion(), &tau, DEFAULT_TOLERANCE).unwrap();
        assert!(!r.pass, "d = {d}: {r:?}");
        assert!(check_modularity(&f, &GammaElement::inversion(), &tau, DEFAULT_TOLERANCE).is_err());
    }
}

#[test]
fn defect_stable_under_doubling() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..5 {
        let (g, tau) = sample_gamma0_pair(&mut rng, 1, 10);
        let a = check_modularity(&ModularForm::eisenstein(6, 1, 200), &g, &tau, DEFAULT_TOLERANCE).unwrap();
        let b = check_modularity(&ModularForm::eisenstein(6, 1, 400), &g, &tau, DEFAULT_TOLERANCE).unwrap();
        assert!((a.defect - b.defect).abs() < DEFAULT_TOLERANCE);
        let a = check_e2_anomaly(&tau, 200, DEFAULT_TOLERANCE, true).unwrap();
        let b = check_e2_anomaly(&tau, 400, DEFAULT_TOLERANCE, true).unwrap();
        assert!((a.defect - b.defect).abs() < DEFAULT_TOLERANCE);
    }
}
