#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "reach/core.hpp"

// Text file formats shared by the CLI tools:
//   trajectories:  header "#objects=N #ticks=M width=W height=H d_T=D",
//                  then "object_id,tick,x,y" sorted by (tick, object_id)
//   contacts:      header "#d_T=D ticks=M objects=N", then "a,b,start,end"
//   query batches: "source,destination,start,end" per line
namespace reach {

struct ContactSet;  // contacts.hpp

void write_trajectories(std::ostream& out, const TrajectorySet& ts);
void write_trajectories_file(const std::string& path, const TrajectorySet& ts);
TrajectorySet read_trajectories(std::istream& in, const std::string& name);
TrajectorySet read_trajectories_file(const std::string& path);

void write_contacts_file(const std::string& path, const ContactSet& cs);

void write_queries_file(const std::string& path,
                        const std::vector<Query>& queries);
std::vector<Query> read_queries_file(const std::string& path);

// Positions are kept on a 1 cm grid so that text round trips are exact.
double quantize_cm(double v);
std::string format_pos(double v);

}  // namespace reach
