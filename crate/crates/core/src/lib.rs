//! Minor set covers of complete bipartite graphs, Chimera virtual hardware,
//! clique embeddings, faulty-graph criteria and an exhaustive minor oracle.

pub mod chimera;
pub mod embedder;
pub mod error;
pub mod faulty;
pub mod graph;
pub mod io;
pub mod matching;
pub mod minor;
pub mod msc;
pub mod oracle;

pub use chimera::{ChimeraSpec, FaultSet, QubitCoord, VirtualHardware};
pub use embedder::{ChainStats, Verdict, Violation, ViolationClass};
pub use error::{Error, Result};
pub use faulty::{CliqueVerdict, CriteriaReport, IncompleteBipartite};
pub use graph::{BipartiteLabeling, Edge, Graph, Side, VertexId};
pub use matching::{Matching, MatchingTarget};
pub use minor::{BagMap, Embedding, Minor, MinorSequence, MinorWitness};
pub use msc::MscReport;
pub use oracle::MinorSearch;
