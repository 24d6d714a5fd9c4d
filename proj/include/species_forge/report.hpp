#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace species_forge {

enum class Status { Pass, Fail, Fatal };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Fatal: return "fatal";
    }
    return "?";
}

/// Outcome of one check over one species up to one size.
struct CheckReport {
    std::string check;
    std::string species;
    int n = 0;
    Status status = Status::Pass;
    std::optional<std::string> witness;
    bool expected = false;  // a failure that the catalog declares in advance
    double elapsed_ms = 0;

    bool passed() const { return status == Status::Pass; }
};

/// A computed contradiction of a theorem that the library relies on.
class FatalInconsistency : public std::runtime_error {
public:
    FatalInconsistency(std::string check, std::string witness)
        : std::runtime_error(check + ": " + witness), check_(std::move(check)), witness_(std::move(witness)) {}
    const std::string& check() const noexcept { return check_; }
    const std::string& witness() const noexcept { return witness_; }

private:
    std::string check_;
    std::string witness_;
};

inline CheckReport make_report(std::string check, std::string species, int n,
                               std::optional<std::string> witness) {
    CheckReport r;
    r.check = std::move(check);
    r.species = std::move(species);
    r.n = n;
    r.status = witness ? Status::Fail : Status::Pass;
    r.witness = std::move(witness);
    return r;
}

/// Runs `body` and records wall time in the report it returns.
template <class F>
CheckReport timed(F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    CheckReport r = body();
    auto t1 = std::chrono::steady_clock::now();
    r.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return r;
}

}  // namespace species_forge
