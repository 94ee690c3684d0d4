use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::residue;
use crate::zpoly::Quadrinomial;

/// Divisibility pattern of `(a, b, c)` by `p`.
///
/// Labels 1 to 6 follow the six conditions of the classification theorem.
/// Labels 7 and 8 are the two patterns with `p | a` and `p ∤ b`, settled by
/// a separate lemma (odd `p`) and a closing remark (`p = 2`). This numbering
/// of 7 and 8 is our own choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaseLabel {
    /// `p | a, p | b, p | c`
    #[serde(rename = "1")]
    AllDivide,
    /// `p | a, p | b, p ∤ c`
    #[serde(rename = "2")]
    AbNotC,
    /// `p ∤ a, p | b, p | c`
    #[serde(rename = "3")]
    BcNotA,
    /// `p ∤ a, p ∤ b, p | c`
    #[serde(rename = "4")]
    OnlyC,
    /// `p ∤ a, p | b, p ∤ c`
    #[serde(rename = "5")]
    OnlyB,
    /// `p ∤ abc`
    #[serde(rename = "6")]
    NoneDivide,
    /// `p | a, p ∤ b, p | c`
    #[serde(rename = "7")]
    AcNotB,
    /// `p | a, p ∤ b, p ∤ c`
    #[serde(rename = "8")]
    OnlyA,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 8] = [
        CaseLabel::AllDivide,
        CaseLabel::AbNotC,
        CaseLabel::BcNotA,
        CaseLabel::OnlyC,
        CaseLabel::OnlyB,
        CaseLabel::NoneDivide,
        CaseLabel::AcNotB,
        CaseLabel::OnlyA,
    ];

    pub fn from_pattern(pa: bool, pb: bool, pc: bool) -> Self {
        match (pa, pb, pc) {
            (true, true, true) => CaseLabel::AllDivide,
            (true, true, false) => CaseLabel::AbNotC,
            (false, true, true) => CaseLabel::BcNotA,
            (false, false, true) => CaseLabel::OnlyC,
            (false, true, false) => CaseLabel::OnlyB,
            (false, false, false) => CaseLabel::NoneDivide,
            (true, false, true) => CaseLabel::AcNotB,
            (true, false, false) => CaseLabel::OnlyA,
        }
    }

    pub fn number(self) -> u8 {
        CaseLabel::ALL.iter().position(|&l| l == self).unwrap() as u8 + 1
    }

    /// e.g. `"p|a p|b p∤c"`
    pub fn pattern(self) -> &'static str {
        match self {
            CaseLabel::AllDivide => "p|a p|b p|c",
            CaseLabel::AbNotC => "p|a p|b p∤c",
            CaseLabel::BcNotA => "p∤a p|b p|c",
            CaseLabel::OnlyC => "p∤a p∤b p|c",
            CaseLabel::OnlyB => "p∤a p|b p∤c",
            CaseLabel::NoneDivide => "p∤a p∤b p∤c",
            CaseLabel::AcNotB => "p|a p∤b p|c",
            CaseLabel::OnlyA => "p|a p∤b p∤c",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Subcase {
    /// `p | b/p`
    #[serde(rename = "2.i")]
    TwoI,
    #[serde(rename = "2.ii")]
    TwoII,
    /// `p | n - 1`
    #[serde(rename = "4.i")]
    FourI,
    #[serde(rename = "4.ii")]
    FourII,
    /// `p | n`
    #[serde(rename = "5.i")]
    FiveI,
    #[serde(rename = "5.ii")]
    FiveII,
    /// odd `p`, `p | n - 1`
    #[serde(rename = "6.1.1")]
    SixOneOne,
    /// odd `p`, `p | n`
    #[serde(rename = "6.1.2")]
    SixOneTwo,
    /// odd `p`, `p ∤ n(n - 1)`
    #[serde(rename = "6.1.3")]
    SixOneThree,
    /// `p = 2`, `n` even
    #[serde(rename = "6.2.1")]
    SixTwoOne,
    /// `p = 2`, `n` odd
    #[serde(rename = "6.2.2")]
    SixTwoTwo,
}

impl Subcase {
    pub const ALL: [Subcase; 11] = [
        Subcase::TwoI,
        Subcase::TwoII,
        Subcase::FourI,
        Subcase::FourII,
        Subcase::FiveI,
        Subcase::FiveII,
        Subcase::SixOneOne,
        Subcase::SixOneTwo,
        Subcase::SixOneThree,
        Subcase::SixTwoOne,
        Subcase::SixTwoTwo,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Subcase::TwoI => "2.i",
            Subcase::TwoII => "2.ii",
            Subcase::FourI => "4.i",
            Subcase::FourII => "4.ii",
            Subcase::FiveI => "5.i",
            Subcase::FiveII => "5.ii",
            Subcase::SixOneOne => "6.1.1",
            Subcase::SixOneTwo => "6.1.2",
            Subcase::SixOneThree => "6.1.3",
            Subcase::SixTwoOne => "6.2.1",
            Subcase::SixTwoTwo => "6.2.2",
        }
    }
}

impl fmt::Display for Subcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which result decided a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionSource {
    /// One of the six conditions of the classification theorem.
    Theorem,
    /// Odd `p` with `p | a`, `p ∤ b`.
    OddPrimeDividingA,
    /// `p = 2` with `2 | a`, `2 ∤ b`.
    TwoDividingA,
    /// Outside the theorem's hypotheses; nothing was decided.
    OutOfScope,
}

impl DecisionSource {
    pub fn as_str(self) -> &'static str {
        match self {
            DecisionSource::Theorem => "theorem",
            DecisionSource::OddPrimeDividingA => "odd_prime_dividing_a",
            DecisionSource::TwoDividingA => "two_dividing_a",
            DecisionSource::OutOfScope => "out_of_scope",
        }
    }
}

/// The unique label for `(q, p)`. Works for any `n`, as only residues are used.
pub fn case_of(q: &Quadrinomial, p: u64) -> CaseLabel {
    CaseLabel::from_pattern(residue(&q.a, p) == 0, residue(&q.b, p) == 0, residue(&q.c, p) == 0)
}
