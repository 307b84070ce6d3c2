//! Entanglement-assisted quantum code parameters [[n, K, d; c]]_q from the
//! Hermitian construction, and the quantum Singleton bounds.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grs::CodeFamilyParams;
use crate::hull::{Exactness, HullComputation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuantumError {
    #[error("classical dimension k = {k} must lie in [1, {n}]")]
    DimensionOutOfRange { k: u64, n: u64 },
    #[error("entanglement c = {c} exceeds the classical dimension k = {k}")]
    EntanglementTooLarge { c: u64, k: u64 },
    #[error("propagation needs 1 <= k and 2k <= n (k = {k}, n = {n})")]
    SourceTooLong { k: u64, n: u64 },
    #[error("propagation step i = {i} exceeds its bound {max}")]
    StepOutOfRange { i: u64, max: u64 },
    #[error("propagation shift s = {s} exceeds l - i = {max}")]
    ShiftOutOfRange { s: u64, max: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MdsStatus {
    Eaqmds,
    NotMds,
    Unknown,
}

/// An [[n, K, d; c]]_q code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RecordWire", into = "RecordWire")]
pub struct QuantumCodeRecord {
    pub q: u64,
    pub n: u64,
    /// Number of encoded qudits.
    pub dim: u64,
    pub d: u64,
    pub c: u64,
    pub exactness: Exactness,
    pub mds_status: MdsStatus,
}

#[derive(Serialize, Deserialize)]
struct RecordWire {
    q: u64,
    n: u64,
    #[serde(rename = "K")]
    dim: u64,
    d: u64,
    c: u64,
    exact: bool,
    eaqmds: Option<bool>,
}

impl From<QuantumCodeRecord> for RecordWire {
    fn from(r: QuantumCodeRecord) -> Self {
        RecordWire {
            q: r.q,
            n: r.n,
            dim: r.dim,
            d: r.d,
            c: r.c,
            exact: r.exactness.is_exact(),
            eaqmds: match r.mds_status {
                MdsStatus::Eaqmds => Some(true),
                MdsStatus::NotMds => Some(false),
                MdsStatus::Unknown => None,
            },
        }
    }
}

impl From<RecordWire> for QuantumCodeRecord {
    fn from(w: RecordWire) -> Self {
        QuantumCodeRecord {
            q: w.q,
            n: w.n,
            dim: w.dim,
            d: w.d,
            c: w.c,
            exactness: if w.exact {
                Exactness::Exact
            } else {
                Exactness::UpperBound
            },
            mds_status: match w.eaqmds {
                Some(true) => MdsStatus::Eaqmds,
                Some(false) => MdsStatus::NotMds,
                None => MdsStatus::Unknown,
            },
        }
    }
}

impl std::fmt::Display for QuantumCodeRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[[{},{},{};{}]]_{}",
            self.n, self.dim, self.d, self.c, self.q
        )
    }
}

/// Slack in each quantum Singleton bound (bound minus K); `None` when the
/// third bound does not apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Margins {
    pub first: i64,
    pub second: i64,
    /// Slack of K (3d - 3 - n) ≤ (n - d + 1)(c + 2d - 2 - n), scaled by 3d - 3 - n.
    pub third: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingletonOutcome {
    /// Equality in the first bound, the others satisfied.
    Tight,
    Slack(Margins),
    Violated(Margins),
}

pub fn margins(record: &QuantumCodeRecord) -> Margins {
    let (n, k, d, c) = (
        record.n as i64,
        record.dim as i64,
        record.d as i64,
        record.c as i64,
    );
    let third = (2 * (d - 1) >= n).then(|| {
        let den = 3 * d - 3 - n;
        (n - d + 1) * (c + 2 * d - 2 - n) - k * den
    });
    Margins {
        first: c + (n - 2 * d + 2).max(0) - k,
        second: n - d + 1 - k,
        third,
    }
}

pub fn singleton_check(record: &QuantumCodeRecord) -> SingletonOutcome {
    let m = margins(record);
    if m.first < 0 || m.second < 0 || m.third.is_some_and(|t| t < 0) {
        SingletonOutcome::Violated(m)
    } else if m.first == 0 {
        SingletonOutcome::Tight
    } else {
        SingletonOutcome::Slack(m)
    }
}

/// 2d ≤ n + c - K + 2, the ceiling on codes from the Hermitian construction.
pub fn hermitian_ceiling_holds(record: &QuantumCodeRecord) -> bool {
    2 * record.d + record.dim <= record.n + record.c + 2
}

/// Whether the record meets the quantum Singleton bound with equality.
///
/// For k ≤ λτ this always holds with d = k + 1.
pub fn is_eaqmds(params: &CodeFamilyParams, k: u64, record: &QuantumCodeRecord) -> bool {
    let tight = singleton_check(record) == SingletonOutcome::Tight;
    debug_assert!(
        !(record.exactness.is_exact() && k <= params.lambda_tau()) || tight,
        "{record} from k = {k} should be tight"
    );
    tight
}

fn build(
    params: &CodeFamilyParams,
    k: u64,
    c: u64,
    exactness: Exactness,
) -> Result<QuantumCodeRecord, QuantumError> {
    if k == 0 || k > params.n {
        return Err(QuantumError::DimensionOutOfRange { k, n: params.n });
    }
    if c > k {
        return Err(QuantumError::EntanglementTooLarge { c, k });
    }
    // the true c is at least 2k - n, so this only saturates on bad input
    let dim = (params.n + c).saturating_sub(2 * k);
    let mut record = QuantumCodeRecord {
        q: params.q,
        n: params.n,
        dim,
        d: k + 1,
        c,
        exactness,
        mds_status: MdsStatus::Unknown,
    };
    if exactness.is_exact() {
        record.mds_status = if is_eaqmds(params, k, &record) {
            MdsStatus::Eaqmds
        } else {
            MdsStatus::NotMds
        };
    }
    Ok(record)
}

/// [[n, n - 2k + c, k + 1; c]]_q for a known c.
pub fn eaqecc_params(
    params: &CodeFamilyParams,
    k: u64,
    c: u64,
) -> Result<QuantumCodeRecord, QuantumError> {
    build(params, k, c, Exactness::Exact)
}

/// The record obtained from the closed-form hull computation.
pub fn record_from_hull(hull: &HullComputation) -> Result<QuantumCodeRecord, QuantumError> {
    build(&hull.params, hull.k, hull.c(), hull.exactness)
}

/// From [[n, n-k-l, k+1; k-l]] (an [n, k] GRS code with l-dimensional
/// hull) derive [[n, n-k-i-s, k+i+1; k+i-s]].
pub fn propagate(
    record: &QuantumCodeRecord,
    i: u64,
    s: u64,
) -> Result<QuantumCodeRecord, QuantumError> {
    let n = record.n;
    let k = record.d.saturating_sub(1);
    if k == 0 || 2 * k > n || record.c > k {
        return Err(QuantumError::SourceTooLong { k, n });
    }
    let hull = k - record.c;
    let max_i = hull
        .min((record.q * record.q + 1).saturating_sub(n))
        .min(n - 2 * k);
    if i > max_i {
        return Err(QuantumError::StepOutOfRange { i, max: max_i });
    }
    if s > hull - i {
        return Err(QuantumError::ShiftOutOfRange { s, max: hull - i });
    }
    let mut out = QuantumCodeRecord {
        q: record.q,
        n,
        dim: n - k - i - s,
        d: k + i + 1,
        c: k + i - s,
        exactness: record.exactness,
        mds_status: MdsStatus::Unknown,
    };
    if out.exactness.is_exact() {
        out.mds_status = match singleton_check(&out) {
            SingletonOutcome::Tight => MdsStatus::Eaqmds,
            _ => MdsStatus::NotMds,
        };
    }
    Ok(out)
}
