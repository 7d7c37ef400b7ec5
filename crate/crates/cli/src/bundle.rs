//! Certificate bundles: the two bases, `S~_omega^{1/2}` and the residual,
//! plus `S_f^{1/2}` when the certifying run knew `f`.

use rdual_core::io::{FileError, SequenceFile};
use rdual_core::rduals::RDualCertificate;
use rdual_core::{Matrix, OrthonormalBasis, Tolerances};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateBundle {
    pub e_basis: SequenceFile,
    pub h_basis: SequenceFile,
    pub s_omega_sqrt_ext: SequenceFile,
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_f_sqrt: Option<SequenceFile>,
}

impl CertificateBundle {
    pub fn new(cert: &RDualCertificate, s_f_sqrt: Option<&Matrix>) -> Self {
        Self {
            e_basis: SequenceFile::from_matrix(cert.e_basis.matrix(), Some("e".into())),
            h_basis: SequenceFile::from_matrix(cert.h_basis.matrix(), Some("h".into())),
            s_omega_sqrt_ext: SequenceFile::from_matrix(
                &cert.s_omega_sqrt_ext,
                Some("s_omega_sqrt_ext".into()),
            ),
            residual: cert.residual,
            s_f_sqrt: s_f_sqrt.map(|m| SequenceFile::from_matrix(m, Some("s_f_sqrt".into()))),
        }
    }

    pub fn certificate(&self, tol: &Tolerances) -> Result<RDualCertificate, FileError> {
        let onb = |f: &SequenceFile| {
            OrthonormalBasis::new(f.to_seq()?, tol).map_err(|e| FileError::Value(e.to_string()))
        };
        Ok(RDualCertificate {
            e_basis: onb(&self.e_basis)?,
            h_basis: onb(&self.h_basis)?,
            s_omega_sqrt_ext: self.s_omega_sqrt_ext.to_seq()?.into_matrix(),
            residual: self.residual,
        })
    }

    pub fn s_f_sqrt(&self) -> Result<Option<Matrix>, FileError> {
        self.s_f_sqrt
            .as_ref()
            .map(|f| f.to_seq().map(|s| s.into_matrix()))
            .transpose()
    }
}
