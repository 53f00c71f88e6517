use std::fmt;

/// Which finite set a fuzzy or crisp subset lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CarrierKind {
    S,
    L,
    R,
    SxS,
    LxL,
    RxR,
}

impl CarrierKind {
    pub fn square(self) -> Option<CarrierKind> {
        match self {
            CarrierKind::S => Some(CarrierKind::SxS),
            CarrierKind::L => Some(CarrierKind::LxL),
            CarrierKind::R => Some(CarrierKind::RxR),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CarrierKind::S => "S",
            CarrierKind::L => "L",
            CarrierKind::R => "R",
            CarrierKind::SxS => "SxS",
            CarrierKind::LxL => "LxL",
            CarrierKind::RxR => "RxR",
        }
    }

    pub fn parse(s: &str) -> Option<CarrierKind> {
        Some(match s {
            "S" => CarrierKind::S,
            "L" => CarrierKind::L,
            "R" => CarrierKind::R,
            "SxS" => CarrierKind::SxS,
            "LxL" => CarrierKind::LxL,
            "RxR" => CarrierKind::RxR,
            _ => return None,
        })
    }
}

/// A named carrier: the structure it belongs to plus which of its sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CarrierId {
    pub structure: String,
    pub kind: CarrierKind,
}

impl CarrierId {
    pub fn new(structure: impl Into<String>, kind: CarrierKind) -> Self {
        CarrierId {
            structure: structure.into(),
            kind,
        }
    }

    pub fn square(&self) -> Option<CarrierId> {
        self.kind
            .square()
            .map(|kind| CarrierId::new(self.structure.clone(), kind))
    }
}

impl fmt::Display for CarrierId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.structure, self.kind.as_str())
    }
}
