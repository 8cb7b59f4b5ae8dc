//! The `verify` pass/fail matrix. Hard checks decide the exit code; soft
//! checks (Clinton's `η ≤ 2 sin 36°`) are reported only.

use std::process::ExitCode;

use anyhow::Result;
use sphere_eta::bounds::{
    dk_upper_bound, edge_coefficient, f_eta, fixed_point_mu, half_sphere_contradiction_margin, half_sphere_constants,
    lower_bound_simple, BoundChain,
};
use sphere_eta::clinton::{build_clinton, ClintonVariant, Matching};
use sphere_eta::kitrick::{build_kitrick, is_apex_base, is_apex_leg, kitrick_eta_closed_form};
use sphere_eta::mesh::{extract_edges, eta_of_edges, validate};
use sphere_eta::scalar::{sin36, two_sin36};
use sphere_eta::{BaseTriangleConstants, EdgeKind};

#[derive(Default)]
struct Matrix {
    hard_failures: Vec<String>,
}

impl Matrix {
    fn hard(&mut self, name: &str, ok: bool, detail: String) {
        println!("{:<4} {name:<38} {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.hard_failures.push(name.to_string());
        }
    }

    fn soft(&mut self, name: &str, ok: bool, detail: String) {
        println!("{:<4} {name:<38} {detail}", if ok { "ok" } else { "warn" });
    }
}

fn kitrick_rows(mx: &mut Matrix, n: u32) -> Result<()> {
    let mesh = build_kitrick::<f64>(n)?;
    let edges = extract_edges(&mesh)?;
    let e = eta_of_edges(&edges);
    let exact = kitrick_eta_closed_form::<f64>(n);
    let n2 = (n * n) as usize;
    let lb = lower_bound_simple::<f64>(60 * n2 as u64)?;
    let limit = two_sin36::<f64>();
    let tag = |s: &str| format!("kitrick n={n} {s}");

    let counts = (mesh.face_count(), mesh.vertex_count(), edges.len());
    mx.hard(&tag("counts"), counts == (60 * n2, 30 * n2 + 2, 90 * n2), format!("F,V,E = {counts:?}"));
    mx.hard(&tag("exactness"), (e.eta - exact).abs() <= 1e-9, format!("|{:.12} - {:.12}| = {:.1e}", e.eta, exact, (e.eta - exact).abs()));
    mx.hard(&tag("sandwich"), lb <= e.eta && e.eta < limit, format!("{lb:.6} <= {:.6} < {limit:.6}", e.eta));
    let bases_in = edges.iter().enumerate().filter(|(_, r)| r.origin.as_ref().is_some_and(is_apex_base)).all(|(i, _)| e.argmax.contains(&i));
    let legs_in = edges.iter().enumerate().filter(|(_, r)| r.origin.as_ref().is_some_and(is_apex_leg)).all(|(i, _)| e.argmin.contains(&i));
    mx.hard(
        &tag("extremal edges"),
        bases_in && legs_in,
        format!("apex bases among {} longest, apex legs among {} shortest", e.argmax.len(), e.argmin.len()),
    );
    let v = validate(&mesh);
    mx.hard(&tag("convex"), v.is_valid() && e.eta < 2f64.sqrt(), format!("acute {}, support-plane {}", v.all_faces_acute, v.is_convex));
    Ok(())
}

fn clinton_rows(mx: &mut Matrix, n: u32) -> Result<()> {
    for variant in [ClintonVariant::Centroid, ClintonVariant::Incenter] {
        let mesh = build_clinton::<f64>(n, variant, Matching::Primary)?;
        let edges = extract_edges(&mesh)?;
        let e = eta_of_edges(&edges);
        let n2 = (n * n) as usize;
        let lb = lower_bound_simple::<f64>(20 * n2 as u64)?;
        let tag = |s: &str| format!("{} n={n} {s}", variant.name());
        let counts = (mesh.face_count(), mesh.vertex_count(), edges.len());
        mx.hard(&tag("counts"), counts == (20 * n2, 10 * n2 + 2, 30 * n2), format!("F,V,E = {counts:?}"));
        let v = validate(&mesh);
        mx.hard(&tag("convex"), v.is_valid() && e.eta < 2f64.sqrt(), format!("acute {}, support-plane {}", v.all_faces_acute, v.is_convex));
        mx.hard(&tag("lower bound"), lb <= e.eta, format!("{lb:.6} <= {:.6}", e.eta));
        mx.soft(&tag("eta <= 2 sin 36"), e.eta <= two_sin36::<f64>(), format!("{:.9}", e.eta));
    }
    Ok(())
}

fn bounds_rows(mx: &mut Matrix) -> Result<()> {
    let mut chain_gap = 0.0f64;
    let mut chain_ok = true;
    for m in (4..=1_000_000u64).step_by(2) {
        let c = BoundChain::<f64>::new(m)?;
        chain_gap = chain_gap.max((c.refined - c.simple).abs());
        chain_ok &= c.refined >= c.simple - 1e-12 && c.refined < two_sin36::<f64>();
    }
    mx.hard("bound chain, even m <= 1e6", chain_ok && chain_gap <= 1e-12, format!("max |refined - simple| = {chain_gap:.1e}"));

    let d12 = dk_upper_bound::<f64>(12)?;
    let mu12 = fixed_point_mu(d12)?;
    mx.hard("d12 equality case", (mu12 - 1.0).abs() <= 1e-9, format!("d12 = {d12:.9}, mu = {mu12:.12}"));

    let mut residual = 0.0f64;
    for d in [0.0, 0.5, 1.0, d12] {
        let mu = fixed_point_mu(d)?;
        residual = residual.max((f_eta(mu, d)? - mu).abs());
    }
    mx.hard("fixed point residual", residual <= 1e-12, format!("{residual:.1e}"));

    let s = two_sin36::<f64>();
    let mut decreasing = true;
    for a in 1..100 {
        let d = 2f64.sqrt() * a as f64 / 100.0;
        let hi = s.min(s / d);
        if hi <= 1.0 {
            continue;
        }
        let vals = (0..=100).map(|b| f_eta(1.0 + (hi - 1.0) * b as f64 / 100.0, d)).collect::<Result<Vec<_>, _>>()?;
        decreasing &= vals.windows(2).all(|w| w[1] < w[0]);
    }
    mx.hard("f decreasing in eta", decreasing, "100 values of d".into());

    let c = BaseTriangleConstants::new().c;
    let top = 4.0 * sin36::<f64>().powi(2);
    let grid = |k: usize| c * k as f64 / 199.0;
    let mut in_range = true;
    for a in 0..200 {
        for b in 0..=a {
            for kind in [EdgeKind::Meridional, EdgeKind::Diagonal] {
                let k = edge_coefficient(kind, grid(a), grid(b))?;
                in_range &= k >= 1.0 - 1e-12 && k <= top + 1e-12;
            }
        }
    }
    mx.hard("edge coefficients in [1, 4 sin^2 36]", in_range, "200x200 grid".into());

    let (forced, half) = half_sphere_contradiction_margin::<f64>();
    mx.hard("half-sphere margin", forced > half, format!("{forced:.6} > {half:.6}"));
    let half_sphere = half_sphere_constants();
    mx.soft("half-sphere closed form", half_sphere.quoted_form_matches, half_sphere.note());
    Ok(())
}

pub fn run(n_max: u32) -> Result<ExitCode> {
    let mut mx = Matrix::default();
    for n in 1..=n_max {
        kitrick_rows(&mut mx, n)?;
    }
    for n in 1..=n_max {
        clinton_rows(&mut mx, n)?;
    }
    bounds_rows(&mut mx)?;
    if mx.hard_failures.is_empty() {
        println!("all hard checks passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("{} hard check(s) failed:", mx.hard_failures.len());
        for f in &mx.hard_failures {
            println!("  {f}");
        }
        Ok(ExitCode::from(1))
    }
}
