//! What each codec does to a single block.

use rdh::{BlockView, CodecId};

fn show(id: CodecId, values: &[u8], chunk: &[bool]) -> Result<(), rdh::Error> {
    let codec = id.codec();
    let x = BlockView::new(values.to_vec());
    let bits: String = chunk.iter().map(|&b| if b { '1' } else { '0' }).collect();
    let y = codec.embed(&x, chunk)?;
    let (back, payload) = codec.extract(&y)?;
    assert_eq!(back, x);
    println!(
        "{:<6} {values:?} cap={} +{bits:<3} -> {:?} -> bits {payload}",
        id.name(),
        codec.capacity(&x),
        y.values()
    );
    Ok(())
}

fn main() -> Result<(), rdh::Error> {
    let ranked = BlockView::from([6, 6, 6, 5]).rank();
    println!("rank order of [6,6,6,5]: {:?}", ranked.order());
    let stats = BlockView::from([6, 6, 6, 5]).order_statistics();
    println!("O1={} O2={:?} theta={}", stats.o1(), stats.o2(), stats.theta());

    show(CodecId::Pvo, &[3, 7, 6, 2], &[true])?;
    show(CodecId::Ipvo, &[5, 5, 2, 1], &[true])?;
    show(CodecId::Ipvo, &[5, 5, 2, 1], &[false])?;
    show(CodecId::Pvok, &[6, 6, 6, 5], &[true])?;
    for chunk in [[false; 3], [true; 3], [true, false, true]] {
        show(CodecId::Ppvok, &[6, 6, 6, 5], &chunk)?;
    }
    show(CodecId::Ppvok, &[9, 9, 5, 5], &[])?;
    Ok(())
}
