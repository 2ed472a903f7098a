use crate::algebra::Combination;
use crate::linalg::FGAbelianGroup;

use super::Page;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationPiece {
    pub s: i64,
    pub t: i64,
    pub group: FGAbelianGroup,
    pub representatives: Vec<Combination>,
}

/// The nonzero stable cells of one total degree, in filtration order
/// (column `0` first). Extensions are reported, never resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub total_degree: i64,
    pub pieces: Vec<FiltrationPiece>,
    /// More than one nonzero piece, or any torsion: the group (and the ring
    /// structure touching it) is only known up to extension.
    pub ambiguous: bool,
    /// False when part of this total degree lies outside the reliable window.
    pub complete: bool,
}

pub fn extension_report(einf: &Page, total_degree: i64) -> ExtensionReport {
    let window = einf.window();
    let pieces: Vec<FiltrationPiece> = (-window.d..=0)
        .rev()
        .filter_map(|s| einf.cell(s, total_degree - s))
        .filter(|c| !c.is_zero())
        .map(|c| FiltrationPiece {
            s: c.s,
            t: c.t,
            group: c.group.clone(),
            representatives: c.basis_reps.clone(),
        })
        .collect();
    let ambiguous = pieces.len() > 1 || pieces.iter().any(|p| !p.group.torsion().is_empty());
    ExtensionReport {
        total_degree,
        ambiguous,
        complete: total_degree <= einf.reliable_degree_bound(),
        pieces,
    }
}
