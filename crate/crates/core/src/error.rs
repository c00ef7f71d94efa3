use crate::graph::{Node, Weight};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EddError {
    #[error("network has no edge servers")]
    EmptyNetwork,
    #[error("node {node} is out of range 1..={node_count}")]
    NodeOutOfRange { node: Node, node_count: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(Node),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Node, Node),
    #[error("edge ({0}, {1}) has zero weight")]
    ZeroWeight(Node, Node),
    #[error("edge ({0}, {1}) is not in the network")]
    UnknownEdge(Node, Node),
    #[error("disconnected")]
    Disconnected,
    #[error("destination set is empty")]
    NoDestinations,
    #[error("gamma must be positive")]
    ZeroGamma,
    #[error("infeasible: l_limit {l_limit} is below gamma {gamma}")]
    LimitBelowGamma { gamma: Weight, l_limit: Weight },
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("not a forest: node {0} has more than one parent")]
    NotAForest(Node),
    #[error("instance has {node_count} nodes, limit is {limit}")]
    TooLarge { node_count: usize, limit: usize },
    #[error("invalid generator config: {0}")]
    InvalidConfig(&'static str),
}
