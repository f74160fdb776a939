#pragma once

#include <stdexcept>
#include <string>

namespace bott {

// Root of every domain error raised by the library.
class bott_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Arc set admits no acyclic ordering.
class cycle_error : public bott_error {
  public:
    using bott_error::bott_error;
};

// Vertex count or vertex index outside the supported range.
class range_error : public bott_error {
  public:
    using bott_error::bott_error;
};

class self_loop_error : public bott_error {
  public:
    using bott_error::bott_error;
};

// Slide requested on two vertices whose in-neighbourhoods differ.
class sibling_error : public bott_error {
  public:
    using bott_error::bott_error;
};

// Slide requested with v == w.
class identity_error : public bott_error {
  public:
    using bott_error::bott_error;
};

// Operands of different vertex counts.
class size_error : public bott_error {
  public:
    using bott_error::bott_error;
};

// Matrix is not of the required shape.
class shape_error : public bott_error {
  public:
    using bott_error::bott_error;
};

class diagonal_error : public bott_error {
  public:
    using bott_error::bott_error;
};

// Row block of a row operation whose columns are not pairwise equal.
class column_mismatch_error : public bott_error {
  public:
    using bott_error::bott_error;
};

class singular_error : public bott_error {
  public:
    using bott_error::bott_error;
};

// A store or search outgrew its configured budget.
class resource_error : public bott_error {
  public:
    using bott_error::bott_error;
};

// Malformed textual digraph record.
class format_error : public bott_error {
  public:
    using bott_error::bott_error;
};

} // namespace bott
