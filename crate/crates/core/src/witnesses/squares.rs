use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::grammar::{length_set, semilinear_fit, Grammar, LinearSetUnion};

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LengthFit {
    pub name: String,
    pub lengths: BTreeSet<usize>,
    pub fit: Option<LinearSetUnion>,
}

/// Semilinear fits of the perfect squares and of the length sets of unary
/// grammars, all cut off at `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SquaresReport {
    pub n: usize,
    pub squares: BTreeSet<usize>,
    pub squares_fit: Option<LinearSetUnion>,
    pub grammars: Vec<LengthFit>,
}

impl SquaresReport {
    /// Squares have no fit and every grammar does.
    pub fn separates(&self) -> bool {
        self.squares_fit.is_none() && self.grammars.iter().all(|g| g.fit.is_some())
    }
}

pub fn squares_witness_report(n: usize, corpus: &[(String, Grammar)]) -> Result<SquaresReport, Error> {
    let squares: BTreeSet<usize> = (1..).map(|i| i * i).take_while(|&s| s <= n).collect();
    let squares_fit = semilinear_fit(&squares, n);
    let grammars = corpus
        .iter()
        .map(|(name, g)| {
            let lengths = length_set(g, n)?;
            let fit = semilinear_fit(&lengths, n);
            Ok(LengthFit { name: name.clone(), lengths, fit })
        })
        .collect::<Result<_, Error>>()?;
    Ok(SquaresReport { n, squares, squares_fit, grammars })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus_reports_squares_only() {
        let r = squares_witness_report(60, &[]).unwrap();
        assert_eq!(r.squares.len(), 7);
        assert!(r.squares_fit.is_none());
        assert!(r.grammars.is_empty());
        assert!(r.separates());
    }
}
