#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace strictq {

/// An integer partition: weakly decreasing positive parts, no trailing zeros.
/// The empty partition is the unique partition of 0.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts);
    explicit Partition(std::vector<int> parts);

    /// Builds from a weakly decreasing sequence that may end in zeros;
    /// the zeros are dropped.
    static Partition from_padded(std::span<const int> parts);

    /// Parses `[4,2,1]`, `[]`, with optional whitespace.
    static Partition parse(std::string_view text);

    const std::vector<int>& parts() const noexcept { return parts_; }
    int size() const noexcept { return size_; }
    std::size_t length() const noexcept { return parts_.size(); }
    bool empty() const noexcept { return parts_.empty(); }

    /// i-th part, 0 beyond the length.
    int operator[](std::size_t i) const noexcept { return i < parts_.size() ? parts_[i] : 0; }

    Partition conjugate() const;
    std::string to_string() const;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

private:
    std::vector<int> parts_;
    int size_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Partition& p);

/// An l x m rectangle: `rows` parts, each at most `cols`.
struct Box {
    int rows;
    int cols;

    Box(int rows, int cols);
    int area() const noexcept { return rows * cols; }
    friend bool operator==(const Box&, const Box&) = default;
};

/// The rectangular partition (m^l).
Partition rectangle(const Box& box);

bool fits_in_box(const Partition& p, const Box& box);

/// Complement of p inside the box, rotated by 180 degrees. Throws
/// UsageError when p does not fit.
Partition complement_in_box(const Partition& p, const Box& box);

/// Part-wise sum, shorter partition zero-padded.
Partition add(const Partition& p, const Partition& q);

/// All partitions of k fitting in the box, in lexicographically decreasing
/// order of the zero-padded part vectors.
std::vector<Partition> enumerate_in_box(const Box& box, int k);

/// All partitions of n, same canonical order as enumerate_in_box.
std::vector<Partition> partitions_of(int n);

/// Two-row partition (n-k, k); requires 0 <= k <= n/2.
Partition two_row(int n, int k);

bool contains(const Partition& outer, const Partition& inner);

struct PartitionHash {
    std::size_t operator()(const Partition& p) const noexcept;
};

} // namespace strictq
