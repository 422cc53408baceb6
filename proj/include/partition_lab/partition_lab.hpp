#ifndef PARTITION_LAB_PARTITION_LAB_HPP
#define PARTITION_LAB_PARTITION_LAB_HPP

#include "partition_lab/asymptotics.hpp"
#include "partition_lab/common.hpp"
#include "partition_lab/constructions.hpp"
#include "partition_lab/identities.hpp"
#include "partition_lab/io.hpp"
#include "partition_lab/parallel.hpp"
#include "partition_lab/partitions.hpp"
#include "partition_lab/sieve.hpp"

#endif
