use hyptrans_core::jacobi::{five_diag_coeffs, phi_n};
use hyptrans_core::mat2::Mat2;
use hyptrans_core::mvop::{matrix_poly_eval, MatrixMeasure};
use hyptrans_core::scalar::{cx, Cx};
use hyptrans_core::spectral::ModelParams;
use hyptrans_core::transform::{GridConfig, SpectralField, TransformValue, Transformer};

fn transformer(p: &ModelParams<f64>) -> Transformer<f64> {
    Transformer::new(p, GridConfig { s_nodes: 40, t_nodes: 20, ..GridConfig::default() }).unwrap()
}

fn transforms(tr: &Transformer<f64>, p: &ModelParams<f64>, n_max: usize) -> Vec<SpectralField<f64>> {
    (0..=n_max).map(|n| tr.forward_real(move |x| phi_n(n, x, p))).collect()
}

fn components(v: &TransformValue<f64>) -> Vec<Cx<f64>> {
    v.components().to_vec()
}

#[test]
fn five_term_recurrence_on_grid() {
    for p in [ModelParams::real(0.3, 0.8, 2.5).unwrap(), ModelParams::real(0.0, 0.0, 4.5).unwrap()] {
        let tr = transformer(&p);
        let f = transforms(&tr, &p, 8);
        let fv = |n: isize, i: usize, c: usize| -> Cx<f64> {
            if n < 0 {
                cx(0.0, 0.0)
            } else {
                components(&f[n as usize].values[i])[c]
            }
        };
        for (i, node) in tr.grid.nodes.iter().enumerate().step_by(3) {
            let lam = node.point.lambda.re;
            for c in 0..components(&f[0].values[i]).len() {
                let scale = (0..=8).map(|n| fv(n, i, c).norm()).fold(1e-300, f64::max) * lam.abs().max(1.0);
                for n in 0..=6isize {
                    let k = |m: isize| five_diag_coeffs(m, &p);
                    let rhs = fv(n + 2, i, c) * k(n).a
                        + fv(n + 1, i, c) * k(n).b
                        + fv(n, i, c) * k(n).c
                        + fv(n - 1, i, c) * k(n - 1).b
                        + fv(n - 2, i, c) * k(n - 2).a;
                    let err = (fv(n, i, c) * lam - rhs).norm() / scale;
                    assert!(err < 1e-7, "node {i} n={n}: {err:e}");
                }
            }
        }
    }
}

#[test]
fn stacking_identity() {
    let p = ModelParams::real(0.3, 0.8, 2.5).unwrap();
    let tr = transformer(&p);
    let f = transforms(&tr, &p, 7);
    // Rows of the stacked block are the transform values; on the double
    // band each value is the row (F+, F-).
    let block = |n: usize, i: usize| -> Mat2<f64> {
        let r0 = components(&f[n].values[i]);
        let r1 = components(&f[n + 1].values[i]);
        let z = cx(0.0, 0.0);
        match r0.len() {
            2 => Mat2::new(r0[0], r0[1], r1[0], r1[1]),
            _ => Mat2::new(r0[0], z, r1[0], z),
        }
    };
    for (i, node) in tr.grid.nodes.iter().enumerate().step_by(5) {
        let u0 = block(0, i);
        for m in 0..=3 {
            let pm = matrix_poly_eval(m, node.point.lambda.re, &p).unwrap();
            let um = block(2 * m, i);
            let err = (pm * u0 - um).norm() / um.norm().max(1e-12);
            assert!(err < 1e-6, "node {i} m={m}: {err:e}");
        }
    }
}

#[test]
fn gram_blocks_are_hermitian_and_orthonormal() {
    let p = ModelParams::real(0.3, 0.8, 4.5).unwrap();
    let tr = Transformer::new(&p, GridConfig::default()).unwrap();
    let mm = MatrixMeasure::new(&tr).unwrap();
    for m in 0..=3 {
        for n in 0..=3 {
            let g = mm.gram(m, n).unwrap();
            let gt = mm.gram(n, m).unwrap();
            assert!((g - gt.adjoint()).norm() < 1e-9);
            let want = if m == n { Mat2::identity() } else { Mat2::zero() };
            let tol = if m.max(n) == 0 { 1e-4 } else { 1e-3 };
            assert!((g - want).norm() < tol, "({m},{n}): {:e}", (g - want).norm());
        }
    }
}
