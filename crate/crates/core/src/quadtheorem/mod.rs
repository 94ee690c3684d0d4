//! Closed-form classification of the primes dividing the index of a
//! quadrinomial in scope, together with monogenicity and the exclusion
//! predicates.

mod case;
mod classify;
mod monogenic;
mod criteria;

pub use case::{case_of, CaseLabel, DecisionSource, Subcase};
pub use classify::{classify_prime, classify_prime_seeded, CaseVerdict};
pub use monogenic::{is_monogenic, Monogenicity, MonogenicityReport};
pub use criteria::{all_coeffs_divisible_case, binomial_sum, dk_divides, excluded_prime, Exclusion};

#[cfg(test)]
mod tests;
