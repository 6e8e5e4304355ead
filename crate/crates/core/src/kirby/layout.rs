use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::exact::QS2;
use crate::polytope24::{polytope, SIDE_TABLE};

pub type Point3 = [QS2; 3];

/// Positions in R^3 of the 1-handle components of each side, shipped as data.
pub struct LayoutTable {
    positions: Vec<Point3>,
}

impl LayoutTable {
    fn load() -> LayoutTable {
        let raw: BTreeMap<String, [String; 3]> =
            serde_json::from_str(include_str!("../../data/layout_table.json")).expect("layout table is valid JSON");
        let positions = SIDE_TABLE
            .iter()
            .map(|(label, _)| {
                let coords = raw.get(*label).unwrap_or_else(|| panic!("layout table lacks side {label}"));
                std::array::from_fn(|i| coords[i].parse::<QS2>().expect("layout coordinate parses"))
            })
            .collect();
        LayoutTable { positions }
    }

    pub fn get() -> &'static LayoutTable {
        static T: OnceLock<LayoutTable> = OnceLock::new();
        T.get_or_init(LayoutTable::load)
    }

    pub fn position(&self, side: usize) -> &Point3 {
        &self.positions[side]
    }

    pub fn position_of(&self, label: &str) -> Option<&Point3> {
        polytope().side_by_label(label).ok().map(|i| &self.positions[i])
    }
}

/// Mirror in the plane x = 3.
pub fn reflect_x(p: &Point3) -> Point3 {
    [&QS2::from_ints(6, 0) - &p[0], p[1].clone(), p[2].clone()]
}
