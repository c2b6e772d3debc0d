use super::VirtualDiagram;
use crate::error::{Error, Result};

/// Parses and validates the JSON form. Syntax errors carry the line and
/// column; validation errors name the offending crossing or edge.
pub fn parse_diagram(text: &str) -> Result<VirtualDiagram> {
    let d: VirtualDiagram = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let report = d.validate();
    if !report.is_valid() {
        return Err(Error::InvalidDiagram(report.to_string()));
    }
    Ok(d)
}

/// Compact JSON with fields in the documented order.
pub fn serialize_diagram(d: &VirtualDiagram) -> String {
    serde_json::to_string(d).expect("diagram serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{builder, BUILDER_NAMES};

    #[test]
    fn unknot_text() {
        let d = parse_diagram(r#"{"edges":0,"free_loops":1,"crossings":[]}"#).unwrap();
        assert_eq!(d, VirtualDiagram::unknot());
    }

    #[test]
    fn round_trip_corpus() {
        for name in BUILDER_NAMES {
            let d = builder(name).unwrap();
            assert_eq!(parse_diagram(&serialize_diagram(&d)).unwrap(), d, "{name}");
        }
    }

    #[test]
    fn trefoil_text_is_canonicalized() {
        let text = r#"{ "edges": 6, "free_loops": 0, "crossings": [
            {"type": "classical", "over_out": 1, "sign": 1, "under_in": 2, "over_in": 0, "under_out": 3},
            {"under_in": 5, "type": "classical", "sign": 1, "over_in": 3, "under_out": 0, "over_out": 4},
            {"type": "classical", "sign": 1, "under_in": 1, "over_in": 4, "under_out": 2, "over_out": 5}
        ] }"#;
        let d = parse_diagram(text).unwrap();
        assert_eq!(
            serialize_diagram(&d),
            "{\"edges\":6,\"free_loops\":0,\"crossings\":[\
             {\"type\":\"classical\",\"sign\":1,\"under_in\":2,\"over_in\":0,\"under_out\":3,\"over_out\":1},\
             {\"type\":\"classical\",\"sign\":1,\"under_in\":5,\"over_in\":3,\"under_out\":0,\"over_out\":4},\
             {\"type\":\"classical\",\"sign\":1,\"under_in\":1,\"over_in\":4,\"under_out\":2,\"over_out\":5}]}"
        );
    }

    #[test]
    fn errors() {
        let dangling = r#"{"edges":1,"free_loops":0,"crossings":[]}"#;
        match parse_diagram(dangling) {
            Err(Error::InvalidDiagram(msg)) => assert!(msg.contains("edge-balance"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let unknown = r#"{"edges":0,"free_loops":1,"crossings":[],"colour":3}"#;
        assert!(matches!(parse_diagram(unknown), Err(Error::Parse(_))));
        let extra = r#"{"edges":2,"free_loops":0,"crossings":[
            {"type":"virtual","first_in":0,"first_out":1,"second_in":1,"second_out":0,"chirality":1,"x":0}]}"#;
        assert!(matches!(parse_diagram(extra), Err(Error::Parse(_))));
        match parse_diagram("{\"edges\":0,\n\"free_loops\":}") {
            Err(Error::Parse(msg)) => assert!(msg.contains("line 2"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }
}
