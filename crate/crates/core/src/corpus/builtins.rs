use crate::syntax::{parse_theory, Pretheory};

const GRAPH: &str = include_str!("../../../../corpus/graph.gat");
const CAT: &str = include_str!("../../../../corpus/cat.gat");
const ARROW: &str = include_str!("../../../../corpus/arrow.gat");
const DISPLAY: &str = include_str!("../../../../corpus/display.gat");
const MONOID: &str = include_str!("../../../../corpus/monoid.gat");
const POINTED: &str = include_str!("../../../../corpus/pointed.gat");
const SIG2: &str = include_str!("../../../../corpus/sig2.gat");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinId {
    Graph,
    Cat,
    Arrow,
    Display,
    MonoidLawvere,
    PointedSetLawvere,
    SimplexSignature2,
}

pub const BUILTIN_IDS: [BuiltinId; 7] = [
    BuiltinId::Graph,
    BuiltinId::Cat,
    BuiltinId::Arrow,
    BuiltinId::Display,
    BuiltinId::MonoidLawvere,
    BuiltinId::PointedSetLawvere,
    BuiltinId::SimplexSignature2,
];

impl BuiltinId {
    pub fn name(&self) -> &'static str {
        match self {
            BuiltinId::Graph => "graph",
            BuiltinId::Cat => "cat",
            BuiltinId::Arrow => "arrow",
            BuiltinId::Display => "display",
            BuiltinId::MonoidLawvere => "monoid",
            BuiltinId::PointedSetLawvere => "pointed",
            BuiltinId::SimplexSignature2 => "sig2",
        }
    }

    pub fn from_name(name: &str) -> Option<BuiltinId> {
        BUILTIN_IDS.iter().copied().find(|b| b.name() == name)
    }

    fn source(&self) -> &'static str {
        match self {
            BuiltinId::Graph => GRAPH,
            BuiltinId::Cat => CAT,
            BuiltinId::Arrow => ARROW,
            BuiltinId::Display => DISPLAY,
            BuiltinId::MonoidLawvere => MONOID,
            BuiltinId::PointedSetLawvere => POINTED,
            BuiltinId::SimplexSignature2 => SIG2,
        }
    }
}

/// A built-in theory, exactly as shipped in the corpus directory.
pub fn builtin(id: BuiltinId) -> Pretheory {
    parse_theory(id.source()).expect("corpus theory files parse")
}
