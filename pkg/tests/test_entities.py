import re

from hypothesis import given, strategies as st

from lexscan.document import make_document
from lexscan.entities import PHONE_RE, SSN_RE, get_addresses, get_companies, get_geoentities, get_pii, get_urls, redact
from lexscan.lexicons import default_lexicon


def run(fn, text, *args):
    return fn(make_document("d", text), *args)


def test_example1_companies(example1):
    assert [(a.value.name, a.value.suffix) for a in get_companies(example1)] == [
        ("WESLEY VILLAGE DEVELOPMENT", "LP"), ("KBS-LEGACY APARTMENT COMMUNITY REIT VENTURE", "LLC")]


def test_company_rules():
    assert [(a.value.name, a.value.suffix) for a in run(get_companies, "Acme, Inc. announced")] == [("Acme", "Inc")]
    assert run(get_companies, "the limited partnership") == []
    assert [(a.value.name, a.value.suffix) for a in run(get_companies, "by and between Bank of Foo & Bar L.L.C.")] == [
        ("Bank of Foo & Bar", "LLC")]
    assert [a.value.name for a in run(get_companies, "sold to 3M Company today")] == ["3M"]


@given(st.text(alphabet="AB c,&-. LPIncLLC\n", max_size=40))
def test_company_name_shape(text):
    for a in run(get_companies, text):
        name = a.value.name
        assert name and name == name.strip() and not name.endswith(",")
        assert a.text.startswith(name.split()[0])


def test_geoentities(example1):
    assert [a.value["canonical"] for a in get_geoentities(example1)] == ["Delaware", "Delaware"]
    assert [a.text for a in run(get_geoentities, "Norway")] == ["Norway"]
    assert run(get_geoentities, "Island") == []
    assert [a.value["canonical"] for a in run(get_geoentities, "Island", default_lexicon(("en", "de")))] == ["Iceland"]


def test_addresses():
    [a] = run(get_addresses, "2702 LOVE FIELD DR")
    assert (a.value.number, a.value.street, a.value.suffix) == ("2702", "LOVE FIELD", "DR")
    [a] = run(get_addresses, "100 Main Street, Suite 200")
    assert (a.value.suffix, a.value.unit) == ("ST", "Suite 200")
    [a] = run(get_addresses, "mail to 5 Elm Ave., Springfield, IL 62704 today")
    assert (a.value.city, a.value.state, a.value.zip) == ("Springfield", "IL", "62704")
    assert run(get_addresses, "Chapter 11 DR visits") == []


def test_pii():
    assert [(a.text, a.value.pii_kind) for a in run(get_pii, "SSN 123-45-6789.")] == [("123-45-6789", "ssn")]
    assert [a.value.pii_kind for a in run(get_pii, "call (312) 555-0142")] == ["phone"]
    assert [a.value.redacted for a in run(get_pii, "call +1 312-555-0142")] == ["+X XXX-XXX-XXXX"]
    assert run(get_pii, "1234-56-789") == []
    assert run(get_pii, "000-12-3456 666-12-3456 912-12-3456 123-00-4567 123-45-0000") == []


@given(st.text(alphabet="0123456789-() +.x", max_size=40))
def test_pii_revalidates(text):
    for a in run(get_pii, text):
        pattern = SSN_RE if a.value.pii_kind == "ssn" else PHONE_RE
        assert pattern.fullmatch(a.text)
        assert len(a.value.redacted) == len(a.text) and not re.search(r"\d", a.value.redacted)


def test_redact_preserves_length():
    doc = make_document("d", "SSN 123-45-6789 ok")
    masked = redact(doc, get_pii(doc))
    assert masked == "SSN XXXXXXXXXXX ok"


def test_urls():
    assert [a.text for a in run(get_urls, "see www.acme.com/terms")] == ["www.acme.com/terms"]
    assert [a.text for a in run(get_urls, "at https://example.org/a?b=1.")] == ["https://example.org/a?b=1"]
    assert run(get_urls, "acme dot com") == []
    assert run(get_urls, "http:// alone") == []
