//! The analysis report: every identity residual the toolkit computes for an
//! input, keyed by a stable tag, with one overall verdict.

use serde::Serialize;

use phtk_core::antilinear::{is_anti_pseudo_hermitian, tau_plus};
use phtk_core::metrics::{eta_plus, is_pseudo_hermitian, SignSequence};
use phtk_core::models::{pt_normalize, verify_model_identities, OscillatorModel};
use phtk_core::ptc::verify_ptc;
use phtk_core::spectra::{classify_spectrum, eig_biorthonormal, SlotLabel, SpectralClass};
use phtk_core::symmetries::{
    canonical_antilinear_routes, canonical_antilinear_symmetry, canonical_linear_symmetry,
    check_tau_eta_commutation, eta_involution_defect, tau_involution_defect, SlotAction,
};
use phtk_core::{CMatrix, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileName {
    Strict,
    Spectral,
}

impl ProfileName {
    pub fn tol(self) -> f64 {
        match self {
            ProfileName::Strict => 1e-10,
            ProfileName::Spectral => 1e-6,
        }
    }
}

impl std::str::FromStr for ProfileName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(ProfileName::Strict),
            "spectral" => Ok(ProfileName::Spectral),
            other => Err(format!("unknown profile {other:?} (strict|spectral)")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDescriptor {
    pub source: String,
    pub kind: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualEntry {
    pub key: String,
    pub value: f64,
    pub pass: bool,
    /// Conditional residuals depend on Gram conditions a system may
    /// legitimately fail; they never gate the overall verdict.
    pub conditional: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupEntry {
    pub value: [f64; 2],
    pub multiplicity: usize,
    pub label: String,
    pub gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvolutionVerdicts {
    /// Scaled defect of the antilinear-side Gram conditions (tag c3.1).
    pub tau_conditions_defect: f64,
    /// Scaled defect of the linear-side Gram conditions.
    pub eta_conditions_defect: f64,
    pub tau_conditions_hold: bool,
    pub eta_conditions_hold: bool,
    /// Commutator check, present only when both condition families hold.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutation_holds: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub input: InputDescriptor,
    pub profile: ProfileName,
    pub tol: f64,
    pub spectral_class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unpaired_witness: Option<[f64; 2]>,
    pub eigenvalues: Vec<[f64; 2]>,
    pub groups: Vec<GroupEntry>,
    pub cond_psi: f64,
    pub residuals: Vec<ResidualEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub involutions: Option<InvolutionVerdicts>,
    pub symmetry_actions: Vec<String>,
    pub pass: bool,
}

fn label_string(label: SlotLabel) -> String {
    match label {
        SlotLabel::Real => "real".into(),
        SlotLabel::PairPlus { partner } => format!("pair+ (partner {partner})"),
        SlotLabel::PairMinus { partner } => format!("pair- (partner {partner})"),
        SlotLabel::Unpaired => "unpaired".into(),
    }
}

fn action_string(action: SlotAction) -> String {
    match action {
        SlotAction::Exact { sign } => format!("exact({sign:+})"),
        SlotAction::Swap { partner } => format!("swap({partner})"),
    }
}

/// Run the full operator pipeline on a matrix (plus the truncation identity
/// suite when it came from a model bundle) and assemble the report.
pub fn analyze(
    h: &CMatrix,
    model: Option<&OscillatorModel>,
    descriptor: InputDescriptor,
    profile: ProfileName,
) -> Result<AnalysisReport, Error> {
    let tol = profile.tol();
    let sys = eig_biorthonormal(h, tol.min(1e-9))?;
    let class = classify_spectrum(&sys, tol.min(1e-9));
    let (class_str, witness) = match &class {
        SpectralClass::Real => ("real".to_string(), None),
        SpectralClass::ConjugatePaired => ("conjugate-paired".to_string(), None),
        SpectralClass::Unpaired { witness } => {
            ("unpaired".to_string(), Some([witness.re, witness.im]))
        }
    };

    let eigenvalues: Vec<[f64; 2]> = sys.eigenvalues().iter().map(|z| [z.re, z.im]).collect();
    let groups: Vec<GroupEntry> = sys
        .groups()
        .iter()
        .map(|g| GroupEntry {
            value: [g.value.re, g.value.im],
            multiplicity: g.multiplicity,
            label: label_string(g.label),
            gap: g.gap,
        })
        .collect();

    let mut report = AnalysisReport {
        schema_version: 1,
        input: descriptor,
        profile,
        tol,
        spectral_class: class_str,
        unpaired_witness: witness,
        eigenvalues,
        groups,
        cond_psi: sys.cond_psi(),
        residuals: Vec::new(),
        involutions: None,
        symmetry_actions: Vec::new(),
        pass: false,
    };

    if matches!(class, SpectralClass::Unpaired { .. }) {
        // No metric exists; the report carries the classification only.
        report.pass = false;
        return Ok(report);
    }

    let push = |report: &mut AnalysisReport, key: &str, value: f64, conditional: bool| {
        report.residuals.push(ResidualEntry {
            key: key.to_string(),
            value,
            pass: value <= tol,
            conditional,
        });
    };

    // canonical metric and antilinear counterpart
    let eta = eta_plus(&sys)?;
    let (_, ph) = is_pseudo_hermitian(h, &eta, tol)?;
    push(&mut report, "ph", ph, false);
    let tau = tau_plus(&sys);
    let (_, anti_ph) = is_anti_pseudo_hermitian(h, &tau, tol)?;
    push(&mut report, "anti-ph", anti_ph, false);

    // canonical generators with the alternating sign sequence
    let sigma = SignSequence::alternating(&sys);
    let x = canonical_antilinear_symmetry(&sys, &sigma)?;
    let (r1, r2) = canonical_antilinear_routes(&sys, &sigma)?;
    let x_scale = x.matrix.max_norm().max(1.0);
    let route_defect = x
        .matrix
        .sub(&r1.matrix)
        .max_norm()
        .max(x.matrix.sub(&r2.matrix).max_norm())
        / x_scale;
    push(&mut report, "can-X", route_defect, false);
    push(&mut report, "X2", x.involution_defect() / x_scale, false);
    let s = canonical_linear_symmetry(&sys, &sigma)?;
    let s_scale = s.max_norm().max(1.0);
    push(
        &mut report,
        "S2",
        s.matmul(&s).identity_defect() / s_scale,
        false,
    );
    push(
        &mut report,
        "[S,H]",
        s.matmul(h).sub(&h.matmul(&s)).max_norm() / (s_scale * h.max_norm().max(1.0)),
        false,
    );

    // generalized parity / time-reversal / charge suite
    let ptc_report = verify_ptc(&sys, tol)?;
    for item in &ptc_report.items {
        report.residuals.push(ResidualEntry {
            key: item.key.clone(),
            value: item.residual,
            pass: item.pass,
            conditional: item.conditional,
        });
    }
    report.symmetry_actions = ptc_report
        .actions
        .iter()
        .map(|a| action_string(*a))
        .collect();

    // involution condition families
    let tau_defect = tau_involution_defect(&sys, &sigma)?;
    let eta_defect = eta_involution_defect(&sys, &sigma)?;
    push(&mut report, "c3.1", tau_defect, true);
    push(&mut report, "inv-eta-condi", eta_defect, true);
    let tau_hold = tau_defect <= tol;
    let eta_hold = eta_defect <= tol;
    let commutation_holds = if tau_hold && eta_hold {
        Some(check_tau_eta_commutation(&sys, &sigma, tol)?)
    } else {
        None
    };
    if let Some(ok) = commutation_holds {
        push(&mut report, "commu", if ok { 0.0 } else { 1.0 }, false);
    }
    report.involutions = Some(InvolutionVerdicts {
        tau_conditions_defect: tau_defect,
        eta_conditions_defect: eta_defect,
        tau_conditions_hold: tau_hold,
        eta_conditions_hold: eta_hold,
        commutation_holds,
    });

    // truncation identity suite for model bundles
    if let Some(model) = model {
        let normalized = pt_normalize(&sys, model)?;
        let model_report = verify_model_identities(model, &normalized, tol)?;
        let existing: Vec<String> = report.residuals.iter().map(|r| r.key.clone()).collect();
        for check in &model_report.checks {
            let key = if existing.iter().any(|k| k == &check.key) {
                format!("{}:s4", check.key)
            } else {
                check.key.clone()
            };
            let conditional = matches!(check.key.as_str(), "sigma=" | "ortho-1:law");
            report.residuals.push(ResidualEntry {
                key,
                value: check.residual,
                pass: check.residual <= tol,
                conditional,
            });
        }
    }

    report.pass = report.residuals.iter().all(|r| r.conditional || r.pass);
    Ok(report)
}
