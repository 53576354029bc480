//! Fundamental groups of finite graphs of groups: normal forms, parsing, balls.

mod ball;
mod graph;
mod nf;
mod parse;
mod table;

pub use ball::{
    ball_cap_from_env, enumerate_ball, symmetrize, Ball, BallOptions, DEFAULT_BALL_CAP,
};
pub(crate) use graph::Structure;
pub use graph::{GraphOfGroups, Kind, Letter, NonTriviality, VertexSpec};
pub use nf::{NormalForm, Syl};
pub use parse::{load_group_file, parse_group};
pub use table::{FiniteGroupTable, VertexGroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("edge groups must be finite")]
    InfiniteEdgeGroup,
    #[error("edge group identification is not an injective homomorphism")]
    NotAHomomorphism,
    #[error("name `{0}` is used twice")]
    DuplicateName(String),
    #[error("infinite cyclic vertex group needs a generator name")]
    MissingGenerator,
    #[error("unsupported graph of groups: {0}")]
    BadShape(String),
    #[error("unresolved token `{0}`")]
    UnresolvedToken(String),
    #[error("stable letter used outside an HNN extension")]
    StableLetterInNonHnn,
    #[error("elements belong to different groups")]
    MixedGroups,
    #[error("ball exceeds the cap of {cap} elements")]
    BallOverflow { cap: usize },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("cannot read group file: {0}")]
    Io(String),
}

impl GroupError {
    /// Parse-type errors map to a distinct exit code in the command-line tool.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            GroupError::Parse { .. } | GroupError::UnresolvedToken(_)
        )
    }
}
