from hypothesis import HealthCheck, settings

settings.register_profile(
    "siltgeo",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large,
                           HealthCheck.filter_too_much],
)
settings.load_profile("siltgeo")

PROPERTY_MODULE = "test_properties.py"
ACCEPTANCE_MODULE = "test_acceptance.py"

# outcomes of the property suite, read back by the acceptance summary
property_outcomes = {}
property_collected = []


def pytest_collection_modifyitems(session, config, items):
    items.sort(key=lambda item: item.path.name == ACCEPTANCE_MODULE)
    property_collected[:] = [i.nodeid for i in items if i.path.name == PROPERTY_MODULE]


def pytest_runtest_logreport(report):
    if PROPERTY_MODULE in report.nodeid and (report.when == "call" or report.failed):
        if property_outcomes.get(report.nodeid) != "failed":
            property_outcomes[report.nodeid] = report.outcome
