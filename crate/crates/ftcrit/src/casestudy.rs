//! Bundled 16-event fault tree of a railway level-crossing signaling system,
//! used as the reference model for the CLI's `casestudy` command and the
//! acceptance suite.
//!
//! The top event (unsafe crossing state) is an OR over the rail part, the
//! control part, the operative part (an AND of four redundant sensor/actuator
//! pairs), the network part, and the road part.

use crate::model::FaultTree;
use crate::parser::parse_ftdl;

/// The case-study model in canonical FTDL form.
pub const CASE_STUDY_FTDL: &str = "\
event x1 rate 0.018 \"Vehicle Failure\"
event x2 rate 0.0001347 \"Human Factor\"
event x3 rate 2.85e-6 \"Rail Failure\"
event x4 rate 0.0001347 \"Human Factor\"
event x5 rate 5e-8 \"Program Error\"
event x6 rate 4e-6 \"Programmable Logic Controller Failure\"
event x7 rate 5e-6 \"Network Communication Failure\"
event x8 rate 5e-6 \"Power Network Failure\"
event x9 rate 0.0004 \"Alarm Failure\"
event x10 rate 0.0004 \"Alarm Failure\"
event x11 rate 0.0004 \"Light Failure\"
event x12 rate 0.0004 \"Light Failure\"
event x13 rate 3e-6 \"Motor Failure\"
event x14 rate 3e-6 \"Motor Failure\"
event x15 rate 5e-5 \"Transmission System Failure\"
event x16 rate 5e-5 \"Transmission System Failure\"
top OR(OR(x3, x4), OR(x5, x6), AND(OR(x9, x10), OR(x13, x14), OR(x15, x16), OR(x11, x12)), OR(x7, x8), OR(x1, x2))
";

/// Parses the bundled model. The constant is validated by the test suite, so
/// a failure here is a programming error.
pub fn case_study_tree() -> FaultTree {
    parse_ftdl(CASE_STUDY_FTDL).expect("bundled case-study model parses")
}
