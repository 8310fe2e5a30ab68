//! Workloads shared by the criterion benches.

use qalg_core::fixtures::{self, Fixture};
use qalg_core::{build, complete, AlgebraKind, RewriteSystem};

pub const KINDS: [AlgebraKind; 4] = [AlgebraKind::A, AlgebraKind::Dual, AlgebraKind::T1, AlgebraKind::T2];

pub fn fixtures() -> Vec<Fixture> {
    fixtures::bundled()
}

/// Completes one algebra of a fixture to truncation degree `d`.
pub fn complete_fixture(f: &Fixture, kind: AlgebraKind, d: usize) -> RewriteSystem {
    complete(&build(&f.params, kind), d).expect("fixture algebras complete")
}
