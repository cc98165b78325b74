use super::*;

fn square(half: f64, h: f64) -> RectDomain {
    RectDomain::new((-half, half), (-half, half), h).unwrap()
}

#[test]
fn maximal_constant_and_affine() {
    let dom = square(1.0, 0.1);
    let u = solve_maximal(&dom, &|_, _| 0.4).unwrap();
    assert!(u.values.iter().all(|&v| (v - 0.4).abs() < 1e-12));
    let u = solve_maximal(&dom, &|x, _| 0.3 * x).unwrap();
    for (i, j) in dom.nodes().collect::<Vec<_>>() {
        assert!((u.at(i, j) - 0.3 * dom.x(i)).abs() < 1e-9);
    }
}

#[test]
fn maximal_rejects_timelike_data() {
    let dom = square(1.0, 0.1);
    assert!(matches!(solve_maximal(&dom, &|x, _| 1.2 * x), Err(Error::NotSpacelike(_))));
}

#[test]
fn cylinder_converges_at_second_order() {
    let mut errs = Vec::new();
    for h in [0.05, 0.025] {
        let dom = square(0.5, h);
        let (u, trace, report) = solve_dirichlet(&dom, &|x, _| x.cos(), -1.0, &SolverOptions::default()).unwrap();
        assert_eq!(trace.steps.last().unwrap().t, 1.0);
        assert!(report.checks["residual"].pass);
        let e = dom
            .nodes()
            .map(|(i, j)| (u.at(i, j) - dom.x(i).cos()).abs())
            .fold(0.0, f64::max);
        errs.push(e);
    }
    assert!(errs[0] <= 5e-3, "{errs:?}");
    let ratio = errs[0] / errs[1];
    assert!((2.5..=6.0).contains(&ratio), "{errs:?}");
}

#[test]
fn unit_data_bump_satisfies_the_bounds() {
    let dom = square(1.0, 0.1);
    let (u, trace, report) = solve_dirichlet(&dom, &|_, _| 1.0, -1.0, &SolverOptions::default()).unwrap();
    for name in ["min_on_boundary", "max_grad_on_ring", "monotone_in_t", "c1_bound", "spacelike"] {
        assert!(report.checks[name].pass, "{name}: {:?}", report.checks[name]);
    }
    assert!(u.max() > 1.0);
    let ts: Vec<f64> = trace.steps.iter().map(|s| s.t).collect();
    assert!(ts.windows(2).all(|w| w[1] > w[0]) && ts[0] == 0.0);
}

#[test]
fn maximal_manufactured_solution_is_second_order() {
    // Rotating the maximal profile sin s about the x-axis gives this graph.
    let f = |x: f64, y: f64| (x.sin().powi(2) + y * y).sqrt();
    let errs: Vec<f64> = [0.1, 0.05]
        .iter()
        .map(|&h| {
            let dom = RectDomain::new((1.0, 1.9), (-0.45, 0.45), h).unwrap();
            let u = solve_maximal(&dom, &f).unwrap();
            dom.nodes()
                .map(|(i, j)| (u.at(i, j) - f(dom.x(i), dom.y(j))).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    let ratio = errs[0] / errs[1];
    assert!((2.0..=6.0).contains(&ratio), "{errs:?}");
}

/// Boundary values of `phi` around a constant interior.
fn start(dom: &RectDomain, phi: Phi, inside: f64) -> GridField {
    let mut u = GridField::constant(dom, inside);
    for (i, j) in dom.boundary_nodes() {
        let k = dom.index(i, j);
        u.values[k] = phi(dom.x(i), dom.y(j));
    }
    u
}

/// Nonlinear Gauss-Seidel: each sweep solves the equation at one node for
/// its own value with the neighbours frozen.
fn gauss_seidel(init: &GridField, alpha: f64, source: f64) -> GridField {
    let dom = init.domain.clone();
    let mut u = init.clone();
    let local = |u: &GridField, i: usize, j: usize| {
        let jet = operator::stencil_jet(&dom, &u.values, i, j);
        crate::lorentz::q_operator(&jet, alpha, 1.0) - source
    };
    for _ in 0..20_000 {
        let mut change = 0.0f64;
        for (i, j) in dom.interior_nodes() {
            let k = dom.index(i, j);
            for _ in 0..20 {
                let r = local(&u, i, j);
                let old = u.values[k];
                let e = 1e-7;
                u.values[k] = old + e;
                let d = (local(&u, i, j) - r) / e;
                let step = r / d;
                u.values[k] = old - step;
                change = change.max(step.abs());
                if step.abs() < 1e-15 {
                    break;
                }
            }
        }
        if change < 1e-13 {
            return u;
        }
    }
    panic!("Gauss-Seidel did not converge");
}

#[test]
fn discrete_comparison_against_fixed_point() {
    // 9 interior nodes per axis, the smallest grid the domain type accepts.
    let dom = square(1.0, 0.2);
    let alpha = -1.0;
    let phi_u = |_: f64, _: f64| 1.0;
    let phi_v = |x: f64, _: f64| 1.0 + 0.05 * (x + 1.0);
    let opts = SolverOptions::default();
    // Q[u] = 0.3 ≥ Q[v] = 0 with u ≤ v on the boundary.
    let src_u = vec![0.3; dom.interior_dims().1];
    let src_v = vec![0.0; dom.interior_dims().1];
    let u = newton_solve(&start(&dom, &phi_u, 1.0), alpha, 1.0, Some(&src_u), &opts).unwrap().u;
    let v = newton_solve(&start(&dom, &phi_v, 1.05), alpha, 1.0, Some(&src_v), &opts).unwrap().u;
    let u_gs = gauss_seidel(&start(&dom, &phi_u, 1.0), alpha, 0.3);
    let v_gs = gauss_seidel(&start(&dom, &phi_v, 1.05), alpha, 0.0);
    for k in 0..dom.len() {
        assert!((u.values[k] - u_gs.values[k]).abs() < 1e-9);
        assert!((v.values[k] - v_gs.values[k]).abs() < 1e-9);
        assert!(u.values[k] <= v.values[k], "node {k}: {} > {}", u.values[k], v.values[k]);
    }
    assert!(u.max() < v.max());
}

#[test]
fn two_starts_reach_the_same_solution() {
    let dom = square(1.0, 0.1);
    let phi = |x: f64, _: f64| 1.0 + 0.02 * x;
    let opts = SolverOptions::default();
    let v0 = solve_maximal(&dom, &phi).unwrap();
    let a = newton_solve(&v0, -1.0, 1.0, None, &opts).unwrap().u;
    let b = newton_solve(&start(&dom, &phi, 1.02), -1.0, 1.0, None, &opts).unwrap().u;
    let d = a.values.iter().zip(&b.values).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
    assert!(d < 1e-8, "{d}");
}

#[test]
fn iterates_stay_spacelike_and_elliptic() {
    let dom = square(1.0, 0.1);
    let opts = SolverOptions {
        keep_iterates: true,
        ..Default::default()
    };
    let (_, trace, _) = solve_dirichlet(&dom, &|_, _| 0.5, -2.0, &opts).unwrap();
    assert!(!trace.iterates.is_empty());
    let mut seed = 1u64;
    let mut unit = || {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (seed >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    };
    for it in &trace.iterates {
        for (i, j) in dom.interior_nodes() {
            let (p, q) = it.gradient(i, j);
            let g2 = p * p + q * q;
            assert!(g2.sqrt() < 1.0 - opts.eps_s);
            let a = coefficient_matrix(p, q);
            let xi = [unit(), unit()];
            let n2 = xi[0] * xi[0] + xi[1] * xi[1];
            let quad = a[0][0] * xi[0] * xi[0] + 2.0 * a[0][1] * xi[0] * xi[1] + a[1][1] * xi[1] * xi[1];
            assert!(quad >= (1.0 - g2) * n2 - 1e-14 && quad <= n2 + 1e-14);
        }
    }
    assert!(trace.max_iterate_grad < 1.0 - opts.eps_s);
}

#[test]
fn steep_problems_stall_instead_of_breaking_the_safeguard() {
    let dom = square(1.0, 0.1);
    let err = solve_dirichlet(&dom, &|_, _| 0.2, -20.0, &SolverOptions::default()).unwrap_err();
    assert!(matches!(err, Error::ContinuationStalled { .. }), "{err}");
}

#[test]
fn shifted_solution_never_touches() {
    let dom = square(0.5, 0.05);
    let (u, _, _) = solve_dirichlet(&dom, &|x, _| x.cos(), -1.0, &SolverOptions::default()).unwrap();
    let delta = 1e-3;
    let lifted = GridField {
        domain: dom.clone(),
        values: u.values.iter().map(|v| v + delta).collect(),
    };
    let gap = dom
        .interior_nodes()
        .into_iter()
        .map(|(i, j)| lifted.at(i, j) - u.at(i, j))
        .fold(f64::INFINITY, f64::min);
    assert!(gap > 0.0);
    // The lift is no longer a solution: the zero-order term changed.
    let r = assemble_qt(&lifted, &|x, _| x.cos() + delta, -1.0, 1.0).unwrap();
    assert!(r.values.iter().any(|v| v.abs() > 1e-6));
}

#[test]
fn barrier_for_unit_data() {
    let dom = square(1.0, 0.05);
    let phi = |_: f64, _: f64| 1.0;
    let (u, _, _) = solve_dirichlet(&dom, &phi, -1.0, &SolverOptions::default()).unwrap();
    let rep = auto_tune_barrier(&u, &phi, -1.0).unwrap();
    assert!(rep.all_pass(), "{rep:#?}");
    let p = rep.params;
    assert_eq!(p.h(0.0), 0.0);
    assert!((p.h(1.0 / (p.k * p.b)) - p.c1).abs() < 1e-9);
    let again = verify_barrier(&u, &phi, -1.0, &p).unwrap();
    assert_eq!(again.q_negative, rep.q_negative);
}

#[test]
fn positive_alpha_is_flagged() {
    let dom = square(1.0, 0.1);
    match solve_dirichlet(&dom, &|_, _| 1.0, 0.3, &SolverOptions::default()) {
        Ok((_, _, report)) => assert!(!report.checks["alpha_negative"].pass),
        Err(e) => assert!(matches!(e, Error::ContinuationStalled { .. }), "{e}"),
    }
}

#[test]
fn rejects_nonpositive_boundary_data() {
    let dom = square(1.0, 0.1);
    assert!(matches!(
        solve_dirichlet(&dom, &|x, _| x, -1.0, &SolverOptions::default()),
        Err(Error::InvalidInitial(_))
    ));
}
