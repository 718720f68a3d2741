//! Exact minimal Mahler measures of irrationals in real quadratic fields.
//!
//! Every value handled here lives in a single field `Q(√d)` and is kept as
//! an exact [`QuadValue`] `(p + q√d)/den`. Orderings are decided in integer
//! arithmetic; decimal output is derived from integer square roots.
//!
//! The crate is `no_std` and only needs `alloc`. Threading, files and the
//! command line live in the companion `quadheight` crate.

#![no_std]

extern crate alloc;

pub mod approx;
pub mod arith;
mod error;
pub mod lmin;
pub mod mahler;
pub mod oracle;
pub mod pairs;
pub mod primes;
pub mod quad;
pub mod record;
pub mod structure;

pub use approx::Approx;
pub use error::{Error, FieldDefect, Result};
pub use lmin::{candidate_measure, lemma_ex_measure, lmin, lmin_with, Candidate};
pub use mahler::{canonicalize, lead_coeff_k, mahler_measure, MeasureResult, QuadIrrational};
pub use oracle::oracle_lmin;
pub use pairs::{pair_exists, pair_exists_with, PairWitness};
pub use primes::{squarefree_sieve, squarefree_sieve_with, PrimeTable, SquarefreeSet};
pub use quad::{qv_cmp, qv_normalize, QuadValue, Rounding, SquarefreeD, MAX_D};
pub use record::{ratio_string, scan_record, ScanRecord, RATIO_DIGITS};
pub use structure::{
    best_certificate, certificates, decompose_exceptional, first_split_prime, is_exceptional,
    is_exceptional_with, jacobi, lambda_bound, lambda_branch, max_odd_divisor_below_root,
    nonresidue_lmin, nonresidue_lower_bound, prime_class_bound, residue_upper_bound,
    sqrt_mod_prime_power, BoundCertificate, ExceptionalForm, FormVariant, LambdaBranch,
    PrimePower,
};
