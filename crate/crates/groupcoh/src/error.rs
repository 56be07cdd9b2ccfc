use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupCohError {
    #[error("generator matrix is not invertible mod {0}")]
    NotInvertible(u32),
    #[error("group closure exceeded {0} elements")]
    ClosureTooLarge(usize),
    #[error("action matrix for generator {0} is not well-defined on the torsion coordinates")]
    ActionNotWellDefined(String),
    #[error("action matrices violate the relation at element {0}, generator {1}")]
    ActionRelationViolated(usize, String),
    #[error("bar resolution budget exceeded: needed {needed} sparse entries, budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not cyclic")]
    NotCyclic,
    #[error("quotient is not cyclic and no bar fallback was allowed")]
    QuotientNotCyclic,
    #[error("LHS collapse certificate failed: potential d_{r} from ({p},{q}) not excluded by coprimality")]
    NoCollapseCertificate { r: usize, p: usize, q: usize },
    #[error("LHS assembly extensions not split by coprimality at total degree {0}")]
    ExtensionAmbiguous(usize),
    #[error(transparent)]
    Exact(#[from] exactalg::ExactError),
}
