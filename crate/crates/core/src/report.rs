//! Serializable records for every command. All integers are decimal
//! strings so values of any size survive a JSON round trip.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dedekind::{DedekindCertificate, Splitting};
use crate::fppoly::FactorRecord;
use crate::irreducibility::Irreducibility;
use crate::quadtheorem::{CaseVerdict, Exclusion, MonogenicityReport};
use crate::zpoly::{Quadrinomial, ScopeFailure};
use crate::VERSION;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub n: String,
    pub a: String,
    pub b: String,
    pub c: String,
}

impl From<&Quadrinomial> for PolyRecord {
    fn from(q: &Quadrinomial) -> Self {
        PolyRecord { n: q.n.to_string(), a: q.a.to_string(), b: q.b.to_string(), c: q.c.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: String,
    pub e: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRecord {
    pub p: String,
    pub case: String,
    pub subcase: Option<String>,
    pub source: String,
    pub verdict: String,
    pub witness: BTreeMap<String, String>,
    pub corroboration: Option<String>,
}

impl From<&CaseVerdict> for PrimeRecord {
    fn from(v: &CaseVerdict) -> Self {
        PrimeRecord {
            p: v.p.to_string(),
            case: v.label.to_string(),
            subcase: v.subcase.map(|s| s.to_string()),
            source: v.source.as_str().to_string(),
            verdict: v.verdict.to_string(),
            witness: v.witness.clone(),
            corroboration: v.corroboration.map(|e| e.to_string()),
        }
    }
}

/// Output of `classify` and one line of `scan`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub poly: PolyRecord,
    pub applicable: bool,
    pub reason: Option<String>,
    pub k: Option<String>,
    #[serde(rename = "D")]
    pub d: Option<String>,
    #[serde(rename = "D_factors")]
    pub d_factors: Vec<PrimePower>,
    pub cofactor: String,
    pub primes: Vec<PrimeRecord>,
    pub monogenic: String,
    pub index: Option<String>,
    pub index_lower: Option<String>,
    pub index_upper: Option<String>,
    pub irreducibility: String,
    pub irreducibility_detail: Option<Irreducibility>,
    pub seed: String,
    pub version: String,
}

impl ClassifyRecord {
    pub fn from_report(r: &MonogenicityReport, irr: &Irreducibility) -> Self {
        ClassifyRecord {
            poly: PolyRecord::from(&r.q),
            applicable: true,
            reason: None,
            k: Some(r.k.to_string()),
            d: Some(r.discriminant.to_string()),
            d_factors: r
                .factorization
                .factors
                .iter()
                .map(|(p, e)| PrimePower { p: p.to_string(), e: e.to_string() })
                .collect(),
            cofactor: r.factorization.cofactor.to_string(),
            primes: r.per_prime.iter().map(PrimeRecord::from).collect(),
            monogenic: r.verdict.as_flag().to_string(),
            index: r.index().map(|i| i.to_string()),
            index_lower: Some(r.index_lower.to_string()),
            index_upper: r.index_upper.as_ref().map(|i| i.to_string()),
            irreducibility: irr.status().to_string(),
            irreducibility_detail: Some(irr.clone()),
            seed: r.seed.to_string(),
            version: VERSION.to_string(),
        }
    }

    pub fn inapplicable(q: &Quadrinomial, reason: ScopeFailure, seed: u64) -> Self {
        ClassifyRecord {
            poly: PolyRecord::from(q),
            applicable: false,
            reason: Some(reason.to_string()),
            k: None,
            d: None,
            d_factors: Vec::new(),
            cofactor: "1".into(),
            primes: Vec::new(),
            monogenic: "unknown".into(),
            index: None,
            index_lower: None,
            index_upper: None,
            irreducibility: "assumed".into(),
            irreducibility_detail: None,
            seed: seed.to_string(),
            version: VERSION.to_string(),
        }
    }

    pub fn dividing_primes(&self) -> Vec<&str> {
        self.primes.iter().filter(|p| p.verdict == "divides").map(|p| p.p.as_str()).collect()
    }

    pub fn to_text(&self) -> String {
        let p = &self.poly;
        let mut s = String::new();
        let _ = writeln!(s, "quadrinomial  x^{} + ({})x^{} + ({})x + ({})", p.n, p.a, n_minus_one(&p.n), p.b, p.c);
        if !self.applicable {
            let _ = writeln!(s, "out of scope  {}", self.reason.as_deref().unwrap_or("?"));
            return s;
        }
        let _ = writeln!(s, "k             {}", self.k.as_deref().unwrap_or("-"));
        let _ = writeln!(s, "D             {}", self.d.as_deref().unwrap_or("-"));
        let factors: Vec<String> = self
            .d_factors
            .iter()
            .map(|f| if f.e == "1" { f.p.clone() } else { format!("{}^{}", f.p, f.e) })
            .collect();
        let mut fline = factors.join(" * ");
        if self.cofactor != "1" {
            let _ = write!(fline, " * [{}]", self.cofactor);
        }
        let _ = writeln!(s, "|D|           {fline}");
        for pr in &self.primes {
            let sub = pr.subcase.as_deref().map(|x| format!(" ({x})")).unwrap_or_default();
            let _ = writeln!(s, "  p = {:<10} case {}{sub:<9} {}", pr.p, pr.case, pr.verdict);
            for (k, v) in &pr.witness {
                let _ = writeln!(s, "      {k} = {v}");
            }
        }
        let _ = writeln!(s, "monogenic     {}", self.monogenic);
        if let Some(i) = &self.index {
            let _ = writeln!(s, "index         {i}");
        } else if let (Some(lo), hi) = (&self.index_lower, &self.index_upper) {
            let _ = writeln!(s, "index         between {lo} and {}", hi.as_deref().unwrap_or("?"));
        }
        let _ = writeln!(s, "irreducible   {}", self.irreducibility);
        let _ = writeln!(s, "seed          {}", self.seed);
        s
    }

    /// One row in the order of [`CSV_HEADER`].
    pub fn to_csv_row(&self) -> String {
        let p = &self.poly;
        [
            p.n.clone(),
            p.a.clone(),
            p.b.clone(),
            p.c.clone(),
            self.applicable.to_string(),
            self.d.clone().unwrap_or_default(),
            self.monogenic.clone(),
            self.index.clone().unwrap_or_default(),
            self.dividing_primes().join(";"),
            self.irreducibility.clone(),
            self.seed.clone(),
        ]
        .join(",")
    }
}

fn n_minus_one(n: &str) -> String {
    n.parse::<u64>().map(|v| (v - 1).to_string()).unwrap_or_else(|_| "n-1".into())
}

pub const CSV_HEADER: &str = "n,a,b,c,applicable,D,monogenic,index,dividing_primes,irreducibility,seed";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionEntry {
    pub p: String,
    pub excluded: bool,
    pub condition: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionsRecord {
    pub poly: PolyRecord,
    pub primes: Vec<ExclusionEntry>,
    pub seed: String,
    pub version: String,
}

impl ExclusionsRecord {
    pub fn new(q: &Quadrinomial, results: &[(u64, Option<Exclusion>)], seed: u64) -> Self {
        ExclusionsRecord {
            poly: PolyRecord::from(q),
            primes: results
                .iter()
                .map(|(p, e)| ExclusionEntry {
                    p: p.to_string(),
                    excluded: e.is_some(),
                    condition: e.map(|e| e.to_string()),
                })
                .collect(),
            seed: seed.to_string(),
            version: VERSION.to_string(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.primes {
            let _ = match &e.condition {
                Some(c) => writeln!(s, "{:<12} excluded      {c}", e.p),
                None => writeln!(s, "{:<12} not excluded", e.p),
            };
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DedekindRecord {
    pub poly: String,
    pub p: String,
    pub factorization: Vec<FactorRecord>,
    pub m_bar: String,
    pub verdict: String,
    pub witness: Option<String>,
    pub splitting: Option<Vec<(String, String)>>,
    pub seed: String,
    pub version: String,
}

impl DedekindRecord {
    pub fn new(poly: &str, cert: &DedekindCertificate, splitting: &Splitting, seed: u64) -> Self {
        DedekindRecord {
            poly: poly.to_string(),
            p: cert.p.to_string(),
            factorization: cert.factorization.records(),
            m_bar: cert.m_bar.to_string(),
            verdict: cert.verdict.to_string(),
            witness: cert.witness().map(|w| w.factor.to_string()),
            splitting: match splitting {
                Splitting::Known(st) => Some(st.parts.iter().map(|(f, e)| (f.to_string(), e.to_string())).collect()),
                Splitting::Refused => None,
            },
            seed: seed.to_string(),
            version: VERSION.to_string(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "f             {}", self.poly);
        let _ = writeln!(s, "p             {}", self.p);
        let fac: Vec<String> = self
            .factorization
            .iter()
            .map(|r| if r.exponent == 1 { format!("({})", r.factor) } else { format!("({})^{}", r.factor, r.exponent) })
            .collect();
        let _ = writeln!(s, "f mod p       {}", if fac.is_empty() { "1".into() } else { fac.join(" ") });
        let _ = writeln!(s, "M mod p       {}", if self.m_bar.is_empty() { "0" } else { &self.m_bar });
        let _ = writeln!(s, "verdict       {}", self.verdict);
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "witness       ({w}) divides M mod p");
        }
        match &self.splitting {
            Some(parts) => {
                let parts: Vec<String> = parts.iter().map(|(f, e)| format!("(f={f}, e={e})")).collect();
                let _ = writeln!(s, "splitting     {}", parts.join(" "));
            }
            None => {
                let _ = writeln!(s, "splitting     not determined (p divides the index)");
            }
        }
        s
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub tuples: u64,
    pub applicable: u64,
    pub monogenic: u64,
    pub not_monogenic: u64,
    pub unknown: u64,
    pub emitted: u64,
    pub seed: String,
    pub version: String,
}
