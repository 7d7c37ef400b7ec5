use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rdual_core::extension::{extend_operator, extended_inverse, SubspaceOperator};
use rdual_core::frames::{
    canonical_dual, classify, frame_operator, optimal_bounds, parsevalize, singular_values,
    SequenceKind,
};
use rdual_core::io::{read_file, FileError, SequenceFile};
use rdual_core::linalg::{hermitian_eig, op_norm, psd_sqrt, svd};
use rdual_core::oprep::{build_shift_family, coefficients, lambda_family, represent_inv_sqrt};
use rdual_core::random::{generate_sequence, GenerateKind, GenerateSpec};
use rdual_core::rduals::{
    certify_symmetrical_pair, coefficient_identity_check, cross_gram, decide_type_one_pair,
    gamma_sequence, rdual_type_one, rdual_type_three, recover_symmetrical, recover_type_three,
    symmetric_residual, validate_q,
};
use rdual_core::{Matrix, OrthonormalBasis, Scalar, Tolerances, VectorSeq};
use serde_json::{json, Value};

use crate::args::{Command, GenerateKindArg, RdualCommand};
use crate::batch;
use crate::bundle::CertificateBundle;
use crate::report::{Outcome, Residual};

/// Generated singular values must match the request to this relative level.
const GENERATE_SV_TOL: f64 = 1e-10;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input: no report, exit status 2.
    Usage(String),
    /// The computation itself failed: a "fail" report.
    Compute(String),
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<rdual_core::Error> for CliError {
    fn from(e: rdual_core::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

pub struct Context {
    pub tol: Tolerances,
    pub jobs: usize,
}

/// A command's outcome plus the artifact written by `--out`, if it has one.
pub struct Produced {
    pub outcome: Outcome,
    pub artifact: Option<Value>,
}

impl Produced {
    fn plain(outcome: Outcome) -> Self {
        Self {
            outcome,
            artifact: None,
        }
    }

    fn with(outcome: Outcome, artifact: Value) -> Self {
        Self {
            outcome,
            artifact: Some(artifact),
        }
    }
}

/// Command name and input labels for the report header.
pub fn describe(cmd: &Command) -> (String, BTreeMap<String, String>) {
    let mut inputs = BTreeMap::new();
    let mut put = |k: &str, p: &Path| {
        inputs.insert(k.to_string(), p.display().to_string());
    };
    let name = match cmd {
        Command::Analyze { seq } => {
            put("seq", seq);
            "analyze"
        }
        Command::Rdual(RdualCommand::Type1 { f, e, h }) => {
            put("f", f);
            put("e", e);
            put("h", h);
            "rdual type1"
        }
        Command::Rdual(RdualCommand::Type3 { f, e, h, q }) => {
            put("f", f);
            put("e", e);
            put("h", h);
            put("q", q);
            "rdual type3"
        }
        Command::Certify { f, omega } => {
            put("f", f);
            put("omega", omega);
            "certify"
        }
        Command::Recover {
            omega,
            cert,
            sf_sqrt,
        } => {
            put("omega", omega);
            put("cert", cert);
            if let Some(p) = sf_sqrt {
                put("sf_sqrt", p);
            }
            "recover"
        }
        Command::Gamma { f, omega } => {
            put("f", f);
            put("omega", omega);
            "gamma"
        }
        Command::Decide { f, omega } => {
            put("f", f);
            put("omega", omega);
            "decide"
        }
        Command::Represent {
            f,
            omega,
            h,
            h0_index,
        } => {
            put("f", f);
            put("omega", omega);
            if let Some(p) = h {
                put("h", p);
            }
            inputs.insert("h0_index".into(), h0_index.to_string());
            "represent"
        }
        Command::Extend { phi, vbasis } => {
            put("phi", phi);
            put("vbasis", vbasis);
            "extend"
        }
        Command::Generate { n, kind, sv, seed } => {
            inputs.insert("n".into(), n.to_string());
            inputs.insert("kind".into(), format!("{kind:?}").to_lowercase());
            if !sv.is_empty() {
                let list: Vec<String> = sv.iter().map(|x| x.to_string()).collect();
                inputs.insert("sv".into(), list.join(","));
            }
            inputs.insert("seed".into(), seed.to_string());
            "generate"
        }
        Command::Batch {
            check,
            trials,
            seed,
            n_max,
        } => {
            inputs.insert("check".into(), format!("{check:?}").to_lowercase());
            inputs.insert("trials".into(), trials.to_string());
            inputs.insert("seed".into(), seed.to_string());
            inputs.insert("n_max".into(), n_max.to_string());
            "batch"
        }
    };
    (name.to_string(), inputs)
}

pub fn execute(cmd: &Command, ctx: &Context) -> Result<Produced, CliError> {
    let tol = &ctx.tol;
    match cmd {
        Command::Analyze { seq } => analyze(&load(seq)?, tol),
        Command::Rdual(RdualCommand::Type1 { f, e, h }) => {
            type_one(&load(f)?, &load_onb(e, tol)?, &load_onb(h, tol)?, tol)
        }
        Command::Rdual(RdualCommand::Type3 { f, e, h, q }) => type_three(
            &load(f)?,
            &load_onb(e, tol)?,
            &load_onb(h, tol)?,
            &load(q)?.into_matrix(),
            tol,
        ),
        Command::Certify { f, omega } => certify(&load(f)?, &load(omega)?, tol),
        Command::Recover {
            omega,
            cert,
            sf_sqrt,
        } => {
            let text = std::fs::read_to_string(cert)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", cert.display())))?;
            let bundle: CertificateBundle = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("malformed certificate: {e}")))?;
            let root = match sf_sqrt {
                Some(p) => load(p)?.into_matrix(),
                None => bundle.s_f_sqrt()?.ok_or_else(|| {
                    CliError::Usage("the certificate carries no s_f_sqrt; pass --sf-sqrt".into())
                })?,
            };
            recover(&load(omega)?, &bundle, &root, tol)
        }
        Command::Gamma { f, omega } => gamma(&load(f)?, &load(omega)?, tol),
        Command::Decide { f, omega } => decide(&load(f)?, &load(omega)?, tol),
        Command::Represent {
            f,
            omega,
            h,
            h0_index,
        } => {
            let f = load(f)?;
            let omega = load(omega)?;
            let n = omega.dim();
            let h = match h {
                Some(p) => load_onb(p, tol)?,
                None => OrthonormalBasis::standard(n),
            };
            if *h0_index >= h.dim() {
                return Err(CliError::Usage(format!(
                    "--h0-index {h0_index} out of range for dimension {}",
                    h.dim()
                )));
            }
            represent(&f, &omega, &h.rotated(*h0_index), tol)
        }
        Command::Extend { phi, vbasis } => {
            let phi = read_file(phi)?.to_seq()?.into_matrix();
            let basis = read_file(vbasis)?.to_matrix()?;
            if basis.cols() != phi.rows() {
                return Err(CliError::Usage(format!(
                    "--vbasis has {} vectors but --phi is {} x {}",
                    basis.cols(),
                    phi.rows(),
                    phi.cols()
                )));
            }
            extend(basis, phi, tol)
        }
        Command::Generate { n, kind, sv, seed } => generate(*n, *kind, sv, *seed),
        Command::Batch {
            check,
            trials,
            seed,
            n_max,
        } => {
            if *n_max < 2 {
                return Err(CliError::Usage("--n-max must be at least 2".into()));
            }
            if ctx.jobs == 0 {
                return Err(CliError::Usage("--jobs must be positive".into()));
            }
            let outcome = batch::run(*check, *trials, *seed, *n_max, ctx.jobs, tol)
                .map_err(CliError::Compute)?;
            Ok(Produced::plain(outcome))
        }
    }
}

fn load(path: &Path) -> Result<VectorSeq, CliError> {
    Ok(read_file(path)?.to_seq()?)
}

fn load_onb(path: &Path, tol: &Tolerances) -> Result<OrthonormalBasis, CliError> {
    let seq = load(path)?;
    OrthonormalBasis::new(seq, tol).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn seq_json(s: &VectorSeq) -> Value {
    mat_json(s.synthesis())
}

fn mat_json(m: &Matrix) -> Value {
    serde_json::to_value(SequenceFile::from_matrix(m, None)).expect("plain data")
}

fn scalars_json(v: &[Scalar]) -> Value {
    v.iter().map(|z| json!([z.re, z.im])).collect()
}

fn kind_name(kind: SequenceKind) -> Value {
    serde_json::to_value(kind).expect("plain enum")
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// `cert_rel * max(1, largest column norm)`: column errors of reconstructions.
fn column_tolerance(s: &VectorSeq, tol: &Tolerances) -> f64 {
    tol.cert_rel * s.synthesis().max_column_norm().max(1.0)
}

fn analyze(s: &VectorSeq, tol: &Tolerances) -> Result<Produced, CliError> {
    let class = classify(s, tol)?;
    let sv = singular_values(s)?;
    let mut residuals = Vec::new();
    if class.rank > 0 {
        // F G* is the orthogonal projection onto span(f) for the canonical dual G
        let g = canonical_dual(s, tol)?;
        let u = parsevalize(s, tol)?;
        let proj = u.synthesis() * &u.synthesis().adjoint();
        let defect = (&(s.synthesis() * &g.synthesis().adjoint()) - &proj).max_abs();
        residuals.push(Residual::asserted(
            "canonical_dual_reconstruction",
            defect,
            tol.cert_rel,
        ));
    }
    let results = json!({
        "dimension": s.dim(),
        "rank": class.rank,
        "kind": kind_name(class.kind),
        "bounds": class.bounds,
        "singular_values": sv,
    });
    Ok(Produced::plain(Outcome::new(results, residuals)))
}

fn type_one(
    f: &VectorSeq,
    e: &OrthonormalBasis,
    h: &OrthonormalBasis,
    tol: &Tolerances,
) -> Result<Produced, CliError> {
    let omega = rdual_type_one(f, e, h)?;
    let sf = singular_values(f)?;
    let sw = singular_values(&omega)?;
    let cf = classify(f, tol)?;
    let cw = classify(&omega, tol)?;
    let mut residuals = vec![Residual::asserted(
        "singular_value_gap",
        max_gap(&sf, &sw),
        tol.cert_rel * sf[0].max(1.0),
    )];
    if let (Some(bf), Some(bw)) = (cf.bounds, cw.bounds) {
        residuals.push(Residual::asserted(
            "bound_gap",
            (bf.lower - bw.lower).abs().max((bf.upper - bw.upper).abs()),
            tol.cert_rel * bf.upper.max(1.0),
        ));
    }
    let results = json!({
        "omega": seq_json(&omega),
        "kind_f": kind_name(cf.kind),
        "kind_omega": kind_name(cw.kind),
        "bounds_f": cf.bounds,
        "bounds_omega": cw.bounds,
        "singular_values_f": sf,
        "singular_values_omega": sw,
    });
    Ok(Produced::with(
        Outcome::new(results, residuals),
        seq_json(&omega),
    ))
}

fn type_three(
    f: &VectorSeq,
    e: &OrthonormalBasis,
    h: &OrthonormalBasis,
    q: &Matrix,
    tol: &Tolerances,
) -> Result<Produced, CliError> {
    let s_f = frame_operator(f);
    let q = validate_q(q, &s_f, tol)?;
    let omega = rdual_type_three(f, e, h, &q, tol)?;
    let root = psd_sqrt(&s_f, tol)?;
    let back = recover_type_three(&omega, e, h, &q, &root)?;
    let residuals = vec![Residual::asserted(
        "round_trip",
        back.synthesis().max_column_distance(f.synthesis()),
        column_tolerance(f, tol),
    )];
    let results = json!({
        "omega": seq_json(&omega),
        "bounds_f": optimal_bounds(f, tol)?,
        "bounds_omega": optimal_bounds(&omega, tol)?,
        "q_norm": op_norm(q.matrix())?,
        "q_inverse_norm": op_norm(q.inverse())?,
    });
    Ok(Produced::with(
        Outcome::new(results, residuals),
        seq_json(&omega),
    ))
}

fn certify(f: &VectorSeq, omega: &VectorSeq, tol: &Tolerances) -> Result<Produced, CliError> {
    let cert = certify_symmetrical_pair(f, omega, tol)?;
    let root = psd_sqrt(&frame_operator(f), tol)?;
    let back = recover_symmetrical(omega, &cert, &root, tol)?;
    let bundle = CertificateBundle::new(&cert, Some(&root));
    let bundle_json = serde_json::to_value(&bundle).expect("plain data");
    let residuals = vec![
        Residual::asserted("certificate", cert.residual, column_tolerance(omega, tol)),
        Residual::asserted(
            "recovery",
            back.synthesis().max_column_distance(f.synthesis()),
            column_tolerance(f, tol),
        ),
    ];
    let results = json!({
        "rank": classify(f, tol)?.rank,
        "bounds": optimal_bounds(f, tol)?,
        "certificate": bundle_json,
    });
    Ok(Produced::with(
        Outcome::new(results, residuals),
        bundle_json,
    ))
}

fn recover(
    omega: &VectorSeq,
    bundle: &CertificateBundle,
    s_f_sqrt: &Matrix,
    tol: &Tolerances,
) -> Result<Produced, CliError> {
    let cert = bundle.certificate(tol)?;
    let f = recover_symmetrical(omega, &cert, s_f_sqrt, tol)?;
    // the recovered f must reproduce omega through the same certificate
    let reproduction = symmetric_residual(
        &f,
        omega,
        &cert.e_basis,
        &cert.h_basis,
        &cert.s_omega_sqrt_ext,
        tol,
    )?;
    let residuals = vec![Residual::asserted(
        "reproduction",
        reproduction,
        column_tolerance(omega, tol),
    )];
    let results = json!({ "f": seq_json(&f) });
    Ok(Produced::with(
        Outcome::new(results, residuals),
        seq_json(&f),
    ))
}

fn gamma(f: &VectorSeq, omega: &VectorSeq, tol: &Tolerances) -> Result<Produced, CliError> {
    let cert = certify_symmetrical_pair(f, omega, tol)?;
    let g = gamma_sequence(f, &cert, tol)?;
    let class = classify(f, tol)?;
    let bounds = optimal_bounds(f, tol)?;
    let condition = (bounds.upper / bounds.lower).sqrt();
    let mut residuals = vec![
        Residual::asserted("certificate", cert.residual, column_tolerance(omega, tol)),
        Residual::asserted(
            "coefficient_identity",
            coefficient_identity_check(f, omega, &cert, tol)?,
            tol.cert_rel * condition.max(1.0),
        ),
    ];
    let riesz = class.kind == SequenceKind::RieszBasis;
    if riesz {
        residuals.push(Residual::asserted(
            "biorthogonality",
            cross_gram(omega, &g).identity_defect(),
            tol.cert_rel * condition.max(1.0),
        ));
    }
    let results = json!({
        "gamma": seq_json(&g),
        "riesz_basis": riesz,
    });
    Ok(Produced::with(
        Outcome::new(results, residuals),
        seq_json(&g),
    ))
}

fn decide(f: &VectorSeq, omega: &VectorSeq, tol: &Tolerances) -> Result<Produced, CliError> {
    let d = decide_type_one_pair(f, omega, tol)?;
    let scale = d.spectra_f[0].max(d.spectra_omega[0]);
    let mut residuals = Vec::new();
    if let Some(r) = d.reproduction_residual {
        residuals.push(Residual::asserted(
            "reproduction",
            r,
            tol.cert_rel * scale.max(1.0),
        ));
    }
    if let Some(r) = d.witness_residual {
        residuals.push(Residual::asserted(
            "antiunitary_intertwining",
            r,
            tol.cert_rel * (scale * scale).max(1.0),
        ));
    }
    let mut results = serde_json::to_value(d.summary()).expect("plain data");
    if let (Some((e, h)), Some(w)) = (&d.bases, &d.witness) {
        results["e_basis"] = mat_json(e.matrix());
        results["h_basis"] = mat_json(h.matrix());
        results["antiunitary_unitary_part"] = mat_json(&w.unitary_part);
    }
    Ok(Produced::plain(Outcome::new(results, residuals)))
}

fn represent(
    f: &VectorSeq,
    omega: &VectorSeq,
    h: &OrthonormalBasis,
    tol: &Tolerances,
) -> Result<Produced, CliError> {
    let fam = build_shift_family(omega, h, tol)?;
    let lambdas = lambda_family(&fam);
    let co = coefficients(f, omega, &fam, tol)?;
    let rep = represent_inv_sqrt(&fam, &lambdas, &co)?;

    let spectrum = hermitian_eig(&fam.s_sqrt_ext)?.eigenvalues;
    let condition = spectrum[spectrum.len() - 1] / spectrum[0];
    let level = tol.cert_rel * condition.max(1.0);
    let root_b = rep.bessel_sup.sqrt();
    let lambda_excess = rep
        .lambda_norms
        .iter()
        .map(|l| l - root_b)
        .fold(f64::NEG_INFINITY, f64::max);
    let tail_excess = rep
        .tail_table
        .iter()
        .map(|row| row.partial_error - row.tail_bound)
        .fold(f64::NEG_INFINITY, f64::max);
    let c_vs_p =
        co.c.iter()
            .zip(&co.p)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
    let residuals = vec![
        Residual::asserted("shift_property", fam.shift_property_residual(), level),
        Residual::asserted("error_a", rep.error_a, level),
        Residual::asserted(
            "lambda_norm_excess",
            lambda_excess,
            tol.cert_rel * root_b.max(1.0),
        ),
        Residual::asserted("tail_excess", tail_excess, level),
        Residual::measured("error_c", rep.error_c),
        Residual::measured("modulus_gap", co.modulus_gap),
        Residual::measured("c_minus_p", c_vs_p),
    ];
    let results = json!({
        "a": scalars_json(&co.a),
        "c": scalars_json(&co.c),
        "p": scalars_json(&co.p),
        "l1_a": co.l1_a,
        "l1_c": co.l1_c,
        "error_a": rep.error_a,
        "error_c": rep.error_c,
        "bessel_sup": rep.bessel_sup,
        "lambda_norms": rep.lambda_norms,
        "tail_table": rep.tail_table,
        "operator_a": mat_json(&rep.operator_a),
        "operator_c": mat_json(&rep.operator_c),
    });
    Ok(Produced::plain(Outcome::new(results, residuals)))
}

fn extend(basis: Matrix, phi: Matrix, tol: &Tolerances) -> Result<Produced, CliError> {
    let op = SubspaceOperator::new(basis, phi.clone(), tol)?;
    let ext = extend_operator(&op);
    let ext_inv = extended_inverse(&op);
    let s = svd(&phi)?;
    let norm = s.singulars[0];
    let inv_norm = 1.0 / s.singulars[s.singulars.len() - 1];
    let id = Matrix::identity(ext.rows());
    let product = (&(&ext * &ext_inv) - &id)
        .max_abs()
        .max((&(&ext_inv * &ext) - &id).max_abs());
    let mut residuals = vec![
        Residual::asserted(
            "norm_gap",
            (op_norm(&ext)? - norm).abs(),
            tol.cert_rel * norm.max(1.0),
        ),
        Residual::asserted(
            "inverse_norm_gap",
            (op_norm(&ext_inv)? - inv_norm).abs(),
            tol.cert_rel * inv_norm.max(1.0),
        ),
        Residual::asserted(
            "inverse_product",
            product,
            tol.cert_rel * (norm * inv_norm).max(1.0),
        ),
    ];
    if phi.hermitian_defect() <= tol.exact_rel * norm.max(1.0) {
        residuals.push(Residual::asserted(
            "hermitian_defect",
            ext.hermitian_defect().max(ext_inv.hermitian_defect()),
            tol.cert_rel * inv_norm.max(norm).max(1.0),
        ));
    }
    let results = json!({
        "extended": mat_json(&ext),
        "extended_inverse": mat_json(&ext_inv),
        "norm": norm,
        "inverse_norm": inv_norm,
        "complement_scale": op.complement_scale(),
    });
    Ok(Produced::with(
        Outcome::new(results, residuals),
        mat_json(&ext),
    ))
}

fn generate(n: usize, kind: GenerateKindArg, sv: &[f64], seed: u64) -> Result<Produced, CliError> {
    let kind = match kind {
        GenerateKindArg::Onb if sv.is_empty() => GenerateKind::Onb,
        GenerateKindArg::Onb => {
            return Err(CliError::Usage(
                "--sv is only used with --kind spectrum".into(),
            ))
        }
        GenerateKindArg::Spectrum => GenerateKind::Spectrum {
            singular_values: sv.to_vec(),
        },
    };
    let spec = GenerateSpec { n, kind, seed };
    let s = generate_sequence(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
    let got = singular_values(&s)?;
    let residual = match &spec.kind {
        GenerateKind::Onb => Residual::asserted(
            "orthonormality",
            (&s.synthesis().adjoint() * s.synthesis()).identity_defect(),
            GENERATE_SV_TOL,
        ),
        GenerateKind::Spectrum { singular_values } => {
            let mut want = singular_values.clone();
            want.sort_by(|a, b| b.total_cmp(a));
            Residual::asserted(
                "singular_value_gap",
                max_gap(&want, &got),
                GENERATE_SV_TOL * want[0].max(1.0),
            )
        }
    };
    let results = json!({
        "sequence": seq_json(&s),
        "singular_values": got,
    });
    Ok(Produced::with(
        Outcome::new(results, vec![residual]),
        seq_json(&s),
    ))
}

pub fn write_artifact(path: &PathBuf, value: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("plain data");
    std::fs::write(path, text + "\n")
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}
