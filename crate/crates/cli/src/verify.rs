//! The `verify` subcommand: the operator identity suite over seeded random
//! ensembles, with the worst residual per identity tag and a pass count.

use std::collections::BTreeMap;

use anyhow::{bail, Result};

use phtk_core::antilinear::{is_anti_pseudo_hermitian, tau_plus};
use phtk_core::linalg;
use phtk_core::metrics::{eta_plus, is_pseudo_hermitian, SignSequence};
use phtk_core::models::{random_pseudo_hermitian, random_quasi_hermitian};
use phtk_core::ptc::build_ptc;
use phtk_core::spectra::{classify_spectrum, eig_biorthonormal, SpectralClass};
use phtk_core::symmetries::{canonical_antilinear_symmetry, symmetry_action, SlotAction};
use phtk_core::Complex64;

const TOL: f64 = 1e-9;

#[derive(Default)]
struct Table {
    worst: BTreeMap<&'static str, f64>,
    failures: usize,
}

impl Table {
    fn record(&mut self, tag: &'static str, value: f64, limit: f64) {
        let entry = self.worst.entry(tag).or_insert(0.0);
        if value > *entry {
            *entry = value;
        }
        if value > limit {
            self.failures += 1;
        }
    }
}

fn seeded_spectrum(dim: usize, seed: u64) -> Vec<f64> {
    (0..dim)
        .map(|k| {
            let jitter = ((seed
                .wrapping_mul(0x9e3779b97f4a7c15)
                .wrapping_add(k as u64 * 97))
                % 100) as f64
                / 1000.0;
            -2.0 + 4.0 * (k as f64 + 0.5) / dim as f64 + jitter
        })
        .collect()
}

pub fn run(seed: u64, count: usize, dim: usize, ensemble: &str) -> Result<i32> {
    if dim == 0 || dim > 16 {
        bail!("dim must lie in 1..=16");
    }
    if count == 0 {
        bail!("count must be positive");
    }
    let mut table = Table::default();
    for case in 0..count {
        let case_seed = seed.wrapping_add(case as u64);
        match ensemble {
            "quasi" => quasi_case(dim, case_seed, &mut table)?,
            "pseudo" => pseudo_case(dim, case_seed, &mut table)?,
            other => bail!("unknown ensemble {other:?}"),
        }
    }
    println!("ensemble: {ensemble}, count: {count}, dim: {dim}, seed: {seed}");
    println!("{:<12} worst residual", "tag");
    for (tag, value) in &table.worst {
        println!("{tag:<12} {value:.3e}");
    }
    if table.failures == 0 {
        println!("all checks passed");
        Ok(0)
    } else {
        println!("{} checks failed", table.failures);
        Ok(1)
    }
}

fn quasi_case(dim: usize, seed: u64, table: &mut Table) -> Result<()> {
    let spectrum = seeded_spectrum(dim, seed);
    let h = random_quasi_hermitian(&spectrum, seed)?;
    let sys = eig_biorthonormal(&h, 1e-10)?;
    if classify_spectrum(&sys, 1e-10) != SpectralClass::Real {
        table.record("class", 1.0, 0.5);
        return Ok(());
    }
    table.record("bi-ortho", sys.biorthonormality_defect(), TOL);
    table.record("complete", sys.completeness_defect(), TOL);
    table.record(
        "sr",
        sys.reconstruction_defect() / h.max_norm().max(1.0),
        TOL,
    );

    let eta = eta_plus(&sys)?;
    let (_, ph) = is_pseudo_hermitian(&h, &eta, TOL)?;
    table.record("ph", ph, 1e-10);
    let min_eig = eta.min_eigenvalue();
    table.record("eta+>0", if min_eig > 0.0 { 0.0 } else { 1.0 }, 0.5);
    let tau = tau_plus(&sys);
    let (_, anti) = is_anti_pseudo_hermitian(&h, &tau, TOL)?;
    table.record("anti-ph", anti, 1e-10);

    let set = build_ptc(&sys)?;
    let h_scale = h.max_norm().max(1.0);
    table.record(
        "nilp",
        set.charge.matmul(&set.charge).identity_defect(),
        TOL,
    );
    table.record("nilp", set.pt.involution_defect(), TOL);
    table.record(
        "[C,H]",
        set.charge.matmul(&h).sub(&h.matmul(&set.charge)).max_norm()
            / (h_scale * set.charge.max_norm().max(1.0)),
        TOL,
    );
    let eta_c = eta.matrix.matmul(&set.charge);
    table.record(
        "C==",
        eta_c.sub(&set.parity.matrix).max_norm()
            / (eta.matrix.max_norm() * set.charge.max_norm()).max(1.0),
        TOL,
    );
    let gram = sys.psi().adjoint().matmul(&eta.matrix).matmul(sys.psi());
    table.record("ortho-cpt", gram.identity_defect(), TOL);

    // charge action: (-1)^n on every slot
    for (gi, g) in sys.groups().iter().enumerate() {
        let w = if gi % 2 == 0 { 1.0 } else { -1.0 };
        for col in g.cols() {
            let v = sys.psi_col(col);
            let image = set.charge.matvec(&v);
            let expect = linalg::vec_scale(Complex64::new(w, 0.0), &v);
            table.record(
                "gen-CPT-psi",
                linalg::vec_norm(&linalg::vec_sub(&image, &expect)),
                TOL,
            );
        }
    }
    Ok(())
}

fn pseudo_case(dim: usize, seed: u64, table: &mut Table) -> Result<()> {
    // one conjugate pair plus seeded reals filling the rest
    let n_real = dim.saturating_sub(2);
    let pair = Complex64::new(
        -0.3 + ((seed % 17) as f64) / 20.0,
        0.4 + ((seed % 11) as f64) / 12.0,
    );
    let h = random_pseudo_hermitian(n_real, &[pair], seed)?;
    let sys = eig_biorthonormal(&h, 1e-10)?;
    match classify_spectrum(&sys, 1e-10) {
        SpectralClass::ConjugatePaired => {}
        _ => {
            table.record("class", 1.0, 0.5);
            return Ok(());
        }
    }
    let eta = eta_plus(&sys)?;
    let (_, ph) = is_pseudo_hermitian(&h, &eta, TOL)?;
    table.record("eta_+2", ph, 1e-10);

    let x = canonical_antilinear_symmetry(&sys, &SignSequence::all_plus(&sys))?;
    let actions = symmetry_action(&x, &sys, 1e-9)?;
    for (col, action) in actions.iter().enumerate() {
        let ok = match sys.partner_col(col) {
            Some(partner) => *action == SlotAction::Swap { partner },
            None => *action == SlotAction::Exact { sign: 1 },
        };
        table.record("broken+", if ok { 0.0 } else { 1.0 }, 0.5);
    }

    let set = build_ptc(&sys)?;
    let h_scale = h.max_norm().max(1.0);
    table.record(
        "nilp",
        set.charge.matmul(&set.charge).identity_defect(),
        TOL,
    );
    table.record("nilp", set.pt.involution_defect(), TOL);
    table.record("nilp", set.cpt.involution_defect(), TOL);
    table.record(
        "[C,H]",
        set.charge.matmul(&h).sub(&h.matmul(&set.charge)).max_norm()
            / (h_scale * set.charge.max_norm().max(1.0)),
        TOL,
    );
    table.record(
        "[PT,H]",
        set.pt
            .matrix
            .matmul(&h.conj())
            .sub(&h.matmul(&set.pt.matrix))
            .max_norm()
            / (h_scale * set.pt.matrix.max_norm().max(1.0)),
        TOL,
    );
    Ok(())
}
