#ifndef MCC_ERRORS_HPP
#define MCC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mcc {

struct DuplicateFragment : std::runtime_error {
    explicit DuplicateFragment(const std::string& id)
        : std::runtime_error("fragment already admitted: " + id) {}
};

struct UnknownPredecessor : std::runtime_error {
    explicit UnknownPredecessor(const std::string& what)
        : std::runtime_error("unknown predecessor node: " + what) {}
};

struct SaturatedEdge : std::runtime_error {
    explicit SaturatedEdge(const std::string& what)
        : std::runtime_error("cycle edge has no residual capacity: " + what) {}
};

struct CorruptFlow : std::runtime_error {
    explicit CorruptFlow(const std::string& what)
        : std::runtime_error("flow traversal cannot close at source: " + what) {}
};

struct NotATail : std::runtime_error {
    explicit NotATail(const std::string& what)
        : std::runtime_error("node is not a flow-carrying trajectory tail: " + what) {}
};

struct InvalidBeta : std::runtime_error {
    explicit InvalidBeta(double beta)
        : std::runtime_error("false-positive probability must lie in (0,1), got " +
                             std::to_string(beta)) {}
};

struct SolverStall : std::runtime_error {
    explicit SolverStall(const std::string& what)
        : std::runtime_error("negative cycle canceling exceeded iteration bound: " + what) {}
};

struct OutOfOrderFragment : std::runtime_error {
    explicit OutOfOrderFragment(const std::string& what)
        : std::runtime_error("fragment violates last-timestamp ordering: " + what) {}
};

struct TooLarge : std::runtime_error {
    explicit TooLarge(const std::string& what)
        : std::runtime_error("instance too large for exhaustive solve: " + what) {}
};

struct InvalidConfig : std::runtime_error {
    explicit InvalidConfig(const std::string& what)
        : std::runtime_error("invalid configuration: " + what) {}
};

struct MissingLabel : std::runtime_error {
    explicit MissingLabel(const std::string& id)
        : std::runtime_error("fragment lacks a ground-truth label: " + id) {}
};

}  // namespace mcc

#endif
