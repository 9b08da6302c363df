#include "strictq/lr.hpp"

#include "strictq/errors.hpp"

#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace strictq {

namespace {

// Depth-first filler. Cells are visited row by row, each row right to left,
// which is exactly the order of the reverse reading word, so the lattice
// condition can be checked incrementally on the running content counts.
class TableauCounter {
public:
    TableauCounter(const Partition& outer, const Partition& inner, const Partition& content)
        : outer_(outer.parts())
        , content_(content.parts())
        , used_(content.length() + 1, 0)
    {
        const std::size_t rows = outer_.size();
        inner_.assign(rows, 0);
        for (std::size_t i = 0; i < inner.length(); ++i)
            inner_[i] = inner[i];
        grid_.resize(rows);
        for (std::size_t i = 0; i < rows; ++i)
            grid_[i].assign(outer_[i], 0);
    }

    std::int64_t count() { return fill(0, outer_.empty() ? 0 : outer_[0] - 1); }

private:
    // Next cell after (row, col) in visiting order; row == rows() at the end.
    void advance(std::size_t& row, int& col) const
    {
        --col;
        while (row < outer_.size() && col < inner_[row]) {
            ++row;
            if (row < outer_.size())
                col = outer_[row] - 1;
        }
    }

    std::int64_t fill(std::size_t row, int col)
    {
        while (row < outer_.size() && col < inner_[row]) {
            ++row;
            if (row < outer_.size())
                col = outer_[row] - 1;
        }
        if (row == outer_.size())
            return 1;

        // Row weakly increases left to right: bounded above by the right neighbour.
        int hi = static_cast<int>(content_.size());
        if (col + 1 < outer_[row])
            hi = std::min(hi, grid_[row][col + 1]);
        // Entry v in row i (0-based) of an LR tableau never exceeds i + 1.
        hi = std::min(hi, static_cast<int>(row) + 1);
        // Column strictly increases downward.
        int lo = 1;
        if (row > 0 && col >= inner_[row - 1])
            lo = grid_[row - 1][col] + 1;

        std::int64_t total = 0;
        for (int v = lo; v <= hi; ++v) {
            if (used_[v] >= content_[v - 1])
                continue;
            if (v > 1 && used_[v] + 1 > used_[v - 1])
                continue;
            ++used_[v];
            grid_[row][col] = v;
            std::size_t nrow = row;
            int ncol = col;
            advance(nrow, ncol);
            total += fill(nrow, ncol);
            grid_[row][col] = 0;
            --used_[v];
        }
        return total;
    }

    std::vector<int> outer_;
    std::vector<int> inner_;
    std::vector<int> content_;
    std::vector<int> used_; // 1-based counts of each value placed so far
    std::vector<std::vector<int>> grid_;
};

struct Key {
    Partition outer, left, right;
    friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept
    {
        PartitionHash h;
        return h(k.outer) * 31 * 31 + h(k.left) * 31 + h(k.right);
    }
};

std::shared_mutex memo_mutex;
std::unordered_map<Key, std::int64_t, KeyHash> memo;

} // namespace

std::int64_t lr(const LRQuery& q, int bound)
{
    if (q.outer.size() > bound)
        throw BoundExceeded("lr: instance too large (|outer| = " + std::to_string(q.outer.size()) +
                            " > " + std::to_string(bound) + ")");
    if (q.left.size() + q.right.size() != q.outer.size())
        return 0;
    if (!contains(q.outer, q.left) || !contains(q.outer, q.right))
        return 0;

    Key key{q.outer, q.left, q.right};
    {
        std::shared_lock lock(memo_mutex);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
    }
    const std::int64_t value = TableauCounter(q.outer, q.left, q.right).count();
    std::unique_lock lock(memo_mutex);
    memo.emplace(std::move(key), value);
    return value;
}

int lr_rectangle(const Box& box, const Partition& alpha, const Partition& beta)
{
    if (!fits_in_box(alpha, box) || !fits_in_box(beta, box))
        return 0;
    return complement_in_box(alpha, box) == beta ? 1 : 0;
}

} // namespace strictq
