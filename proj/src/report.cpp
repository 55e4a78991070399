#include "frobvir/report.hpp"

#include <algorithm>

namespace frobvir {

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::ExpectedFail: return "EXPECTED-FAIL";
        case Status::Skipped: return "SKIPPED";
        case Status::Undetermined: return "UNDETERMINED";
    }
    return "?";
}

void Residuals::add(const std::string& location, const TruncatedSeries& residual) {
    order_ = order_ ? std::min(*order_, residual.valid_order()) : residual.valid_order();
    auto low = residual.lowest_term();
    if (!low) return;
    if (!witness_ || low->degree < witness_degree_) {
        witness_ = Witness{location, format_monomial(low->monomial, residual.table()), low->coeff};
        witness_degree_ = low->degree;
    }
}

void Residuals::add_scalar(const std::string& location, const Rational& residual) {
    if (sgn(residual) == 0) return;
    if (!witness_ || witness_degree_ > 0) {
        witness_ = Witness{location, "1", residual};
        witness_degree_ = 0;
    }
}

int Residuals::order() const noexcept { return order_.value_or(0); }

CheckReport Residuals::report(std::string name, std::string anchor) const {
    CheckReport r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    r.order = order();
    r.status = witness_ ? Status::Fail : Status::Pass;
    r.witness = witness_;
    return r;
}

std::size_t SuiteResult::count(Status s) const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [s](const CheckReport& c) { return c.status == s; }));
}

std::size_t SuiteResult::unexpected() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const CheckReport& c) { return c.unexpected; }));
}

}  // namespace frobvir
