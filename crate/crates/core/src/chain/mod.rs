//! Step graphs, chain and weak-chain relations, sequential shadowing and the
//! spectral decomposition.

pub mod decomposition;
pub mod ladder;
pub mod relation;
pub mod sequential;
pub mod step_graph;

pub use decomposition::{spectral_decomposition, weak_chain_classes, ClassReport, Decomposition, SpectralReport};
pub use ladder::ThresholdLadder;
pub use relation::{
    chain_recurrent_set, chain_related, cr_core, is_isolated_cr, is_weak_chain_transitive, weak_related, ChainSearch,
    CrCore, Verdict, WeakMode, WeakRelation,
};
pub use sequential::{
    for_each_spo_window, sequentially_traced, spo_windows, ssp_profile, Certificate, SequentialTrace, SpoWindow,
    SspOptions, SspProfile, TracingSets,
};
pub use step_graph::StepGraph;
