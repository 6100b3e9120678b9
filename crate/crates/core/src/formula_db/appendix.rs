use crate::numerics::BigReal;

use super::DbError;

/// The reserved basic sums and their published digits.
pub const RESERVED: [(u32, u32); 5] = [(2, 6), (2, 8), (3, 8), (2, 10), (4, 8)];

static DIGITS: [(u32, u32, &str); 5] = [
    (2, 6, concat!(
        "1.04141339585526506083393437063648015149985928009683009074851164",
        "5153773087302971784837515447196848525099768521583763747407372688",
        "4795369538022238359517253212365463963612795034976112760332996361",
        "6256852188081083230180343567560363225495708329770860413926565253",
        "0043836463078378465035583569011375448218307043216126923803712749",
        "2398879709498120496839647547013880613853547855073361200925021592",
        "2048841374239723645442685850",
    )),
    (2, 8, concat!(
        "1.00938647188986983251854422721927915640937294263965264120204954",
        "9364385367847079491808637690950271219056272259759829851354604105",
        "2974074982614110450353687683547018469301862442802589875242849768",
        "8957876898959581043312837882772233284579273408664015892038562643",
        "5450329285165922784555461987108701748322359094830741802548831985",
        "8866835445090261233581896447240922859443386546424650958818493182",
        "4643738162119198662316661058",
    )),
    (3, 8, concat!(
        "1.01430529089521626433982702436625155432637069608906894707358345",
        "6867667637693523946711175133555508152520270235636428621421364248",
        "0232941738185064186735956110236907708608852232885420834448581394",
        "4205598524011087984645190142418484664393844183576412240796452514",
        "3823389069592803884034573487533288088530610292952331243167418134",
        "6719842803358332067778429140858446364894815725403060304810303177",
        "2735772545074505256977622009",
    )),
    (2, 10, concat!(
        "1.00225899318651146154688220420078220471671652644695562596172670",
        "3382258341612187430789376917483743132864277183782169767859729001",
        "3290927541892627152558762021134323828486038109593077991669275749",
        "3052592010984023218660627258188268042233443286672431116074512474",
        "4110382924162704634065128094036087399151400598689180216783658166",
        "1123894190759654779731745595746317390484322856511442985339414788",
        "7119147441919740167418480233",
    )),
    (4, 8, concat!(
        "1.02188999123963240995511943981252840721314262894380138881937716",
        "6083386890422403378118008909146569454806099182164137705875782339",
        "9920880968711670569195489838667155265235208787528310809835281206",
        "7392525494917012072378712264801782573164305188408402801768675332",
        "4378706573579491021902617968550914371718501262794713100873318573",
        "1312382395225599648855270261592058750580122807881806321019275669",
        "2513776767867839561290224768",
    )),
];

/// Digit string for one of the reserved constants.
pub fn appendix_digits(a: u32, b: u32) -> Option<&'static str> {
    DIGITS.iter().find(|d| d.0 == a && d.1 == b).map(|d| d.2)
}

/// Number of significant digits embedded for M(a,b).
pub fn appendix_precision(a: u32, b: u32) -> Option<u32> {
    appendix_digits(a, b).map(|s| s.chars().filter(|c| c.is_ascii_digit()).count() as u32)
}

/// Embedded value of a reserved constant, at its full stored precision.
pub fn appendix_constant(a: u32, b: u32) -> Result<BigReal, DbError> {
    let text = appendix_digits(a, b).ok_or_else(|| DbError::UnknownConstant(format!("M({a},{b})")))?;
    let digits = appendix_precision(a, b).unwrap_or(0);
    BigReal::from_decimal(text, digits).map_err(|e| DbError::UnknownConstant(e.to_string()))
}

/// Looks up a reserved constant by name, e.g. "M(2,6)".
pub fn appendix_constant_by_name(name: &str) -> Result<BigReal, DbError> {
    let inner = name
        .trim()
        .strip_prefix("M(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| DbError::UnknownConstant(name.to_string()))?;
    let mut it = inner.split(',').map(|x| x.trim().parse::<u32>());
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => appendix_constant(a, b),
        _ => Err(DbError::UnknownConstant(name.to_string())),
    }
}
