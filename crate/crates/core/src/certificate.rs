//! Certificate files: JSON documents that pair an exclusion certificate with
//! the SHA-256 of the graph's canonical edge-list text.

use crate::excluder::{check_certificate, ExclusionCertificate, VerifyError};
use crate::format::to_edge_list;
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

pub const FORMAT_TAG: &str = "kenabling-certificate/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub format: String,
    pub graph_sha256: String,
    pub n: usize,
    #[serde(flatten)]
    pub certificate: ExclusionCertificate,
}

#[derive(Debug, thiserror::Error)]
pub enum CertificateError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed certificate: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported certificate format `{0}`")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FileVerifyError {
    #[error("graph hash {actual} does not match the certificate's {expected}")]
    HashMismatch { expected: String, actual: String },
    #[error(transparent)]
    Certificate(#[from] VerifyError),
}

/// SHA-256 (hex) of the graph's edge-list serialization.
pub fn graph_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(to_edge_list(g).as_bytes()))
}

impl CertificateFile {
    pub fn new(g: &Graph, certificate: ExclusionCertificate) -> Self {
        CertificateFile { format: FORMAT_TAG.to_string(), graph_sha256: graph_hash(g), n: g.n(), certificate }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        let file: CertificateFile = serde_json::from_str(text)?;
        if file.format != FORMAT_TAG {
            return Err(CertificateError::Format(file.format));
        }
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self, CertificateError> {
        let text = std::fs::read_to_string(path).map_err(|source| CertificateError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<(), CertificateError> {
        std::fs::write(path, self.to_json() + "\n").map_err(|source| CertificateError::Io { path: path.display().to_string(), source })
    }

    /// Hash check first, then evidence replay and the exact oracle.
    pub fn verify(&self, g: &Graph) -> Result<(), FileVerifyError> {
        let actual = graph_hash(g);
        if actual != self.graph_sha256 {
            return Err(FileVerifyError::HashMismatch { expected: self.graph_sha256.clone(), actual });
        }
        check_certificate(g, self.certificate.k, &self.certificate)?;
        Ok(())
    }
}
