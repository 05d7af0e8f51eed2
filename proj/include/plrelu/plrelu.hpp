#pragma once

#include "plrelu/cone_decomposition.hpp"
#include "plrelu/geometry.hpp"
#include "plrelu/mesh_generator.hpp"
#include "plrelu/pl_mesh.hpp"
#include "plrelu/rational.hpp"
#include "plrelu/relu_compiler.hpp"
#include "plrelu/relu_network.hpp"
#include "plrelu/sampling.hpp"
#include "plrelu/serialization.hpp"
#include "plrelu/simplex_function.hpp"
#include "plrelu/verify.hpp"
