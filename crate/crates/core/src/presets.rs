//! Built-in run configurations, one per reproduced table row.

/// `(name, text)` of every preset.
pub const PRESETS: &[(&str, &str)] = &[
    ("table1_a0.1_k3", include_str!("../presets/table1_a0.1_k3.cfg")),
    ("table1_a0.2_k3", include_str!("../presets/table1_a0.2_k3.cfg")),
    ("table1_a0.232931_k3", include_str!("../presets/table1_a0.232931_k3.cfg")),
    ("table1_a0.232932_k3", include_str!("../presets/table1_a0.232932_k3.cfg")),
    ("table1_a0.3_k3", include_str!("../presets/table1_a0.3_k3.cfg")),
    ("table1_a0.4_k3", include_str!("../presets/table1_a0.4_k3.cfg")),
    ("table1_a0.5_k3", include_str!("../presets/table1_a0.5_k3.cfg")),
    ("table1_a0.6_k3", include_str!("../presets/table1_a0.6_k3.cfg")),
    ("table1_a0.7_k3", include_str!("../presets/table1_a0.7_k3.cfg")),
    ("table1_a0.751405_k3", include_str!("../presets/table1_a0.751405_k3.cfg")),
    ("table1_a0.751406_k3", include_str!("../presets/table1_a0.751406_k3.cfg")),
    ("table1_a0.8_k3", include_str!("../presets/table1_a0.8_k3.cfg")),
    ("table1_a0.9_k3", include_str!("../presets/table1_a0.9_k3.cfg")),
    ("table1_a1.0_k3", include_str!("../presets/table1_a1.0_k3.cfg")),
    ("table1_a1.1_k3", include_str!("../presets/table1_a1.1_k3.cfg")),
    ("table1_a1.2_k3", include_str!("../presets/table1_a1.2_k3.cfg")),
    ("table1_a1.3_k3", include_str!("../presets/table1_a1.3_k3.cfg")),
    ("table1_a1.4_k3", include_str!("../presets/table1_a1.4_k3.cfg")),
    ("table1_a1.5_k3", include_str!("../presets/table1_a1.5_k3.cfg")),
    ("table2_a0.5_k3", include_str!("../presets/table2_a0.5_k3.cfg")),
    ("table2_a0.5_k5", include_str!("../presets/table2_a0.5_k5.cfg")),
    ("table2_a0.5_k7", include_str!("../presets/table2_a0.5_k7.cfg")),
    ("table2_a0.5_k9", include_str!("../presets/table2_a0.5_k9.cfg")),
    ("table2_a0.5_k11", include_str!("../presets/table2_a0.5_k11.cfg")),
    ("grid_a0.1_k3", include_str!("../presets/grid_a0.1_k3.cfg")),
    ("grid_a0.2_k3", include_str!("../presets/grid_a0.2_k3.cfg")),
    ("grid_a0.3_k3", include_str!("../presets/grid_a0.3_k3.cfg")),
    ("grid_a0.4_k3", include_str!("../presets/grid_a0.4_k3.cfg")),
    ("grid_a0.5_k3", include_str!("../presets/grid_a0.5_k3.cfg")),
    ("grid_a0.6_k3", include_str!("../presets/grid_a0.6_k3.cfg")),
    ("grid_a0.7_k3", include_str!("../presets/grid_a0.7_k3.cfg")),
    ("grid_a0.8_k3", include_str!("../presets/grid_a0.8_k3.cfg")),
    ("grid_a0.9_k3", include_str!("../presets/grid_a0.9_k3.cfg")),
    ("grid_a1.0_k3", include_str!("../presets/grid_a1.0_k3.cfg")),
    ("grid_a0.1_k5", include_str!("../presets/grid_a0.1_k5.cfg")),
    ("grid_a0.2_k5", include_str!("../presets/grid_a0.2_k5.cfg")),
    ("grid_a0.3_k5", include_str!("../presets/grid_a0.3_k5.cfg")),
    ("grid_a0.4_k5", include_str!("../presets/grid_a0.4_k5.cfg")),
    ("grid_a0.5_k5", include_str!("../presets/grid_a0.5_k5.cfg")),
    ("grid_a0.6_k5", include_str!("../presets/grid_a0.6_k5.cfg")),
    ("grid_a0.7_k5", include_str!("../presets/grid_a0.7_k5.cfg")),
    ("grid_a0.8_k5", include_str!("../presets/grid_a0.8_k5.cfg")),
    ("grid_a0.9_k5", include_str!("../presets/grid_a0.9_k5.cfg")),
    ("grid_a1.0_k5", include_str!("../presets/grid_a1.0_k5.cfg")),
    ("grid_a0.1_k7", include_str!("../presets/grid_a0.1_k7.cfg")),
    ("grid_a0.2_k7", include_str!("../presets/grid_a0.2_k7.cfg")),
    ("grid_a0.3_k7", include_str!("../presets/grid_a0.3_k7.cfg")),
    ("grid_a0.4_k7", include_str!("../presets/grid_a0.4_k7.cfg")),
    ("grid_a0.5_k7", include_str!("../presets/grid_a0.5_k7.cfg")),
    ("grid_a0.6_k7", include_str!("../presets/grid_a0.6_k7.cfg")),
    ("grid_a0.7_k7", include_str!("../presets/grid_a0.7_k7.cfg")),
    ("grid_a0.8_k7", include_str!("../presets/grid_a0.8_k7.cfg")),
    ("grid_a0.9_k7", include_str!("../presets/grid_a0.9_k7.cfg")),
    ("grid_a1.0_k7", include_str!("../presets/grid_a1.0_k7.cfg")),
    ("grid_a0.1_k9", include_str!("../presets/grid_a0.1_k9.cfg")),
    ("grid_a0.2_k9", include_str!("../presets/grid_a0.2_k9.cfg")),
    ("grid_a0.3_k9", include_str!("../presets/grid_a0.3_k9.cfg")),
    ("grid_a0.4_k9", include_str!("../presets/grid_a0.4_k9.cfg")),
    ("grid_a0.5_k9", include_str!("../presets/grid_a0.5_k9.cfg")),
    ("grid_a0.6_k9", include_str!("../presets/grid_a0.6_k9.cfg")),
    ("grid_a0.7_k9", include_str!("../presets/grid_a0.7_k9.cfg")),
    ("grid_a0.8_k9", include_str!("../presets/grid_a0.8_k9.cfg")),
    ("grid_a0.9_k9", include_str!("../presets/grid_a0.9_k9.cfg")),
    ("grid_a1.0_k9", include_str!("../presets/grid_a1.0_k9.cfg")),
    ("grid_a0.1_k11", include_str!("../presets/grid_a0.1_k11.cfg")),
    ("grid_a0.2_k11", include_str!("../presets/grid_a0.2_k11.cfg")),
    ("grid_a0.3_k11", include_str!("../presets/grid_a0.3_k11.cfg")),
    ("grid_a0.4_k11", include_str!("../presets/grid_a0.4_k11.cfg")),
    ("grid_a0.5_k11", include_str!("../presets/grid_a0.5_k11.cfg")),
    ("grid_a0.6_k11", include_str!("../presets/grid_a0.6_k11.cfg")),
    ("grid_a0.7_k11", include_str!("../presets/grid_a0.7_k11.cfg")),
    ("grid_a0.8_k11", include_str!("../presets/grid_a0.8_k11.cfg")),
    ("grid_a0.9_k11", include_str!("../presets/grid_a0.9_k11.cfg")),
    ("grid_a1.0_k11", include_str!("../presets/grid_a1.0_k11.cfg")),
    ("table3_a-0.1", include_str!("../presets/table3_a-0.1.cfg")),
    ("table3_a-0.2", include_str!("../presets/table3_a-0.2.cfg")),
    ("table3_a-0.3", include_str!("../presets/table3_a-0.3.cfg")),
    ("table3_a-0.4", include_str!("../presets/table3_a-0.4.cfg")),
    ("table3_a-0.5", include_str!("../presets/table3_a-0.5.cfg")),
    ("table3_a-0.6", include_str!("../presets/table3_a-0.6.cfg")),
    ("table3_a-0.7", include_str!("../presets/table3_a-0.7.cfg")),
    ("table3_a-0.8", include_str!("../presets/table3_a-0.8.cfg")),
    ("table3_a-0.9", include_str!("../presets/table3_a-0.9.cfg")),
    ("table3_a-1.0", include_str!("../presets/table3_a-1.0.cfg")),
    ("table4_a-0.1", include_str!("../presets/table4_a-0.1.cfg")),
    ("table4_a-0.2", include_str!("../presets/table4_a-0.2.cfg")),
    ("table4_a-0.3", include_str!("../presets/table4_a-0.3.cfg")),
    ("table4_a-0.4", include_str!("../presets/table4_a-0.4.cfg")),
    ("table4_a-0.5", include_str!("../presets/table4_a-0.5.cfg")),
    ("table4_a-0.6", include_str!("../presets/table4_a-0.6.cfg")),
    ("table4_a-0.7", include_str!("../presets/table4_a-0.7.cfg")),
    ("table4_a-0.8", include_str!("../presets/table4_a-0.8.cfg")),
    ("table4_a-0.9", include_str!("../presets/table4_a-0.9.cfg")),
    ("table4_a-1.0", include_str!("../presets/table4_a-1.0.cfg")),
    ("table5_a-0.1", include_str!("../presets/table5_a-0.1.cfg")),
    ("table5_a-0.2", include_str!("../presets/table5_a-0.2.cfg")),
    ("table5_a-0.3", include_str!("../presets/table5_a-0.3.cfg")),
    ("table5_a-0.4", include_str!("../presets/table5_a-0.4.cfg")),
    ("table5_a-0.5", include_str!("../presets/table5_a-0.5.cfg")),
    ("table5_a-0.6", include_str!("../presets/table5_a-0.6.cfg")),
    ("table5_a-0.7", include_str!("../presets/table5_a-0.7.cfg")),
    ("table5_a-0.8", include_str!("../presets/table5_a-0.8.cfg")),
    ("table5_a-0.9", include_str!("../presets/table5_a-0.9.cfg")),
    ("table5_a-1.0", include_str!("../presets/table5_a-1.0.cfg")),
    ("oracle_a0", include_str!("../presets/oracle_a0.cfg")),
];

/// Text of the preset called `name`.
pub fn preset(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Names of presets starting with `prefix`.
pub fn preset_names(prefix: &str) -> Vec<&'static str> {
    PRESETS.iter().map(|(n, _)| *n).filter(|n| n.starts_with(prefix)).collect()
}
