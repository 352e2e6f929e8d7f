#pragma once

#include <map>
#include <memory>
#include <vector>

#include <json.hpp>

namespace tatecm {

/// Brute-force homology of a serialized complex. Works straight from the JSON document with
/// dense exponent vectors and plain Gaussian elimination; shares no code with the Groebner
/// basis or sparse graded-piece machinery.
class DenseOracle {
public:
    explicit DenseOracle(const nlohmann::json& complex);
    ~DenseOracle();

    /// dim H_i in internal degree d. Throws WindowEdge at an open end of the window.
    int homology(int i, int d);

    int lo() const noexcept { return lo_; }
    int hi() const noexcept { return hi_; }

private:
    struct Piece;
    using Exponent = std::vector<int>;
    struct Entry {
        std::vector<std::pair<Exponent, std::uint64_t>> terms;
    };

    const Piece& piece(int e);
    std::size_t dim(int i, int d);
    int rank_of(int i, int d);

    std::uint64_t p_;
    std::size_t nvars_;
    std::vector<std::vector<std::pair<Exponent, std::uint64_t>>> ideal_;
    int lo_, hi_;
    bool bounded_below_, bounded_above_;
    std::vector<std::vector<int>> degrees_;          // per position
    std::vector<std::vector<std::vector<Entry>>> d_;  // d_[i - lo - 1][row][col]
    std::map<int, std::unique_ptr<Piece>> pieces_;
};

/// One-shot form of DenseOracle::homology.
int oracle_homology(const nlohmann::json& complex, int i, int d);

}  // namespace tatecm
