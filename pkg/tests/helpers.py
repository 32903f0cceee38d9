from echkit.index import RelClassData, _cz_total, cz_top, j0_topological
from echkit.score import End, UCurveRecord


def make_record(catalog, genus, ends, trivial=None, I=2):
    """Record whose class data is solved so that its ECH index is I and J0 matches the ends."""
    ends = [End(*e) for e in ends]
    rec = UCurveRecord.from_ends(genus, ends, trivial or {}, RelClassData())
    twice = I - j0_topological(rec) - cz_top(rec.alpha, catalog) + cz_top(rec.beta, catalog)
    assert twice % 2 == 0, "no integral Chern number for these ends"
    c = twice // 2
    q = I - c - (_cz_total(rec.alpha, catalog) - _cz_total(rec.beta, catalog))
    return UCurveRecord(rec.alpha, rec.beta, genus, rec.ends, rec.trivial, RelClassData(c, q), I)
