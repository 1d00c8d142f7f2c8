import pytest

from esym.field import make_field

FIELD_SPECS = ("q", "gf(2)", "gf(3)", "gf(4)", "gf(5)")


@pytest.fixture(params=FIELD_SPECS)
def any_field(request):
    return make_field(request.param)


@pytest.fixture(params=[s for s in FIELD_SPECS if s != "q"])
def finite_field(request):
    return make_field(request.param)
