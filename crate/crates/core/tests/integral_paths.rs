use kbessel::integral::{
    eval_w_bessel_kernel, eval_w_cos, eval_w_cosh, sin_relation_check, sinh_relation_check,
    IntegralRepParams,
};
use kbessel::kbessel::eval_w;
use kbessel::quadrature::{QuadConfig, Quadrature};
use kbessel::{KBesselParams, SeriesConfig};

const KS: [f64; 3] = [0.5, 1.0, 2.0];
const RATIOS: [f64; 5] = [-0.4, 0.0, 0.5, 1.0, 2.5];
const ALPHAS: [f64; 3] = [0.5, 1.0, 2.0];
const XS: [f64; 3] = [0.25, 1.0, 3.0];

fn series(k: f64, nu: f64, c: f64, x: f64) -> f64 {
    eval_w(&KBesselParams::new(k, nu, c).unwrap(), x, &SeriesConfig::default()).unwrap().value
}

fn close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs().max(1.0)
}

#[test]
fn cos_and_cosh_agree_with_series_on_grid() {
    let mut quad = Quadrature::new(QuadConfig::default()).unwrap();
    let mut worst: f64 = 0.0;
    for k in KS {
        for ratio in RATIOS {
            let nu = ratio * k;
            for alpha in ALPHAS {
                for x in XS {
                    let p = IntegralRepParams::new(k, nu, alpha, x).unwrap();
                    let cos = eval_w_cos(&p, &mut quad).unwrap().value;
                    let cosh = eval_w_cosh(&p, &mut quad).unwrap().value;
                    let wc = series(k, nu, alpha * alpha, x);
                    let wh = series(k, nu, -alpha * alpha, x);
                    worst = worst.max((cos - wc).abs() / wc.abs().max(1.0));
                    worst = worst.max((cosh - wh).abs() / wh.abs().max(1.0));
                    assert!(close(cos, wc, 1e-9), "cos k={k} nu={nu} a={alpha} x={x}: {cos} vs {wc}");
                    assert!(close(cosh, wh, 1e-9), "cosh k={k} nu={nu} a={alpha} x={x}: {cosh} vs {wh}");
                }
            }
        }
    }
    assert!(worst < 1e-12, "worst {worst:e}");
}

#[test]
fn kernel_path_agrees_with_series_on_grid() {
    let mut quad = Quadrature::new(QuadConfig::default()).unwrap();
    for k in KS {
        for ratio in RATIOS.into_iter().filter(|r| *r > 0.0) {
            let nu = ratio * k;
            for alpha in ALPHAS {
                for c in [alpha * alpha, -alpha * alpha] {
                    for x in XS {
                        let p = IntegralRepParams::new(k, nu, alpha, x).unwrap();
                        let got = eval_w_bessel_kernel(&p, c, &mut quad).unwrap().value;
                        let want = series(k, nu, c, x);
                        assert!(close(got, want, 1e-12), "k={k} nu={nu} c={c} x={x}: {got} vs {want}");
                    }
                }
            }
        }
    }
}

#[test]
fn classical_examples() {
    let mut quad = Quadrature::new(QuadConfig::default()).unwrap();
    let p = IntegralRepParams::new(1.0, 0.0, 1.0, 2.0).unwrap();
    assert!((eval_w_cos(&p, &mut quad).unwrap().value - 0.223_890_779_141_235_67).abs() < 1e-14);
    let p = IntegralRepParams::new(1.0, 0.0, 1.0, 1.0).unwrap();
    assert!((eval_w_cosh(&p, &mut quad).unwrap().value - 1.266_065_877_752_008_4).abs() < 1e-14);
    let p = IntegralRepParams::new(1.0, 1.0, 1.0, 1.0).unwrap();
    assert!((eval_w_bessel_kernel(&p, 1.0, &mut quad).unwrap().value - 0.440_050_585_744_933_55).abs() < 1e-14);
    assert!((eval_w_bessel_kernel(&p, -1.0, &mut quad).unwrap().value - 0.565_159_103_992_485_1).abs() < 1e-14);
    let p = IntegralRepParams::new(2.0, 1.0, 1.0, 0.7).unwrap();
    assert!((eval_w_bessel_kernel(&p, 1.0, &mut quad).unwrap().value - series(2.0, 1.0, 1.0, 0.7)).abs() < 1e-9);
}

#[test]
fn cosh_tends_to_one_at_origin() {
    let mut quad = Quadrature::new(QuadConfig::default()).unwrap();
    let p = IntegralRepParams::new(1.0, 0.0, 1.0, 1e-8).unwrap();
    assert!((eval_w_cosh(&p, &mut quad).unwrap().value - 1.0).abs() < 1e-15);
}

#[test]
fn node_doubling_converges() {
    let mut quad = Quadrature::new(QuadConfig::default()).unwrap();
    for ratio in RATIOS {
        let p = IntegralRepParams::new(1.0, ratio, 2.0, 3.0).unwrap();
        let r = eval_w_cos(&p, &mut quad).unwrap();
        assert!(r.change <= 1e-12 * r.value.abs().max(1.0));
        assert_eq!(r.nodes, 256);
    }
}

#[test]
fn half_order_relations_fit_alpha() {
    for k in [0.5, 1.0, 2.0, 4.0] {
        for alpha in [0.5, 1.0, 2.0] {
            for x in [1e-6, 0.5, 1.0, 3.0] {
                let s = sin_relation_check(k, alpha, x).unwrap();
                let h = sinh_relation_check(k, alpha, x).unwrap();
                assert!((s.fitted_constant - alpha).abs() < 1e-12 * alpha, "{k} {alpha} {x}");
                assert!((h.fitted_constant - alpha).abs() < 1e-12 * alpha, "{k} {alpha} {x}");
                if k == 1.0 {
                    assert!(s.residual_alpha_over_k.abs() < 1e-14);
                }
            }
        }
    }
}
