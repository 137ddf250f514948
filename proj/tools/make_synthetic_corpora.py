#!/usr/bin/env python3
# Copyright 2026 The SlotQA Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the bundled synthetic slot-tagged corpora under data/corpora/.

Utterances are instantiated from templates whose {slot} placeholders are
filled with multi-token values, so the gold BIO tags are known exactly.
Output is deterministic; rerun after editing templates.
"""

import argparse
import pathlib
import random

VEHICLE_LOGGER = {
    "templates": [
        "Please log this trip as {trip_type}",
        "{gps_tracking} GPS for my trip",
        "Please {gps_tracking} GPS tracking and log my car trip",
        "I added {fuel_added} of gas for {fuel_cost} on {date}",
        "The odometer reads {odometer_value} on the {vehicle}",
        "Log a {trip_type} trip for {trip_description} {date}",
        "{start_logging} logging a {trip_type} drive in the {vehicle}",
        "Add a {entry} with {fuel_added} costing {fuel_cost}",
        "Set the odometer to {odometer_value} and {gps_tracking} GPS",
        "Record {trip_description} as a {trip_type} trip",
        "Fuel was {fuel_cost} for {fuel_added} {date}",
        "{start_logging} logging now and mark it {trip_type}",
        "Open a {entry} for the {vehicle} dated {date}",
    ],
    "values": {
        "date": ["today", "yesterday", "June 3rd", "March 12", "last Friday",
                 "Monday morning"],
        "vehicle": ["Honda Civic", "pickup truck", "Tesla", "Ford Focus",
                    "company van"],
        "gps_tracking": ["Turn on", "Turn off", "activate", "enable",
                         "switch on"],
        "odometer_value": ["45210", "120,500", "88000 miles", "9,875 km"],
        "fuel_added": ["12 gallons", "40 liters", "8.5 gallons", "a full tank"],
        "fuel_cost": ["$45", "52 dollars", "$38.20", "sixty bucks"],
        "trip_description": ["a client visit", "the grocery run",
                             "an airport pickup", "the Denver conference"],
        "trip_type": ["Business", "Personal", "Other", "business", "personal"],
        "start_logging": ["Start", "Begin", "Resume"],
        "entry": ["fuel entry", "trip entry", "service entry"],
    },
}

UNITED = {
    "templates": [
        "Book a flight from {departure_airport} to {arrival_airport} on {travel_dates}",
        "I am flying from {departure_airport} and flying to {arrival_airport}",
        "{search} from {departure_airport} to {arrival_airport}",
        "{swap_airports} the airports please",
        "I need a {trip_kind} ticket to {arrival_airport} {travel_dates}",
        "{search} leaving {departure_airport} {travel_dates}",
        "Get me a {trip_kind} flight out of {departure_airport}",
        "{swap_airports} departure and arrival then {search}",
        "Fly to {arrival_airport} {travel_dates} as a {trip_kind}",
    ],
    "values": {
        "departure_airport": ["San Jose", "California", "Denver", "SFO",
                              "Chicago O'Hare", "Houston"],
        "arrival_airport": ["Boston", "arizona", "Newark", "Los Angeles",
                            "Seattle Tacoma"],
        "travel_dates": ["august 15th 2020", "next weekend",
                         "May 3 to May 10", "tomorrow", "December 22"],
        "trip_kind": ["round trip", "one way", "roundtrip", "one-way"],
        "search": ["Find flights", "Search flights", "Look up flights"],
        "swap_airports": ["Swap", "Switch", "Reverse"],
    },
}

TRIP_ADVISOR = {
    "templates": [
        "Please book a {filter_by_rating} hotel in Atlanta Georgia",
        "I need a room for {number_of_people} with {number_of_beds} for {number_of_nights}",
        "Find hotels {filter_by_price} from {date_range}",
        "Show {filter_by_rating} places for {number_of_nights} {date_range}",
        "Reserve {number_of_beds} for {number_of_people}",
        "Hotels {filter_by_price} with {number_of_beds} please",
        "We are {number_of_people} staying {number_of_nights}",
        "Book {date_range} and sort {filter_by_price}",
    ],
    "values": {
        "number_of_people": ["2 people", "two adults", "4 guests",
                             "a family of five"],
        "number_of_beds": ["1 bed", "two beds", "a king bed", "two queen beds"],
        "date_range": ["June 4 to June 7", "this weekend",
                       "December 20 - 27", "next Tuesday through Friday"],
        "number_of_nights": ["3 nights", "one night", "a week", "two nights"],
        "filter_by_price": ["under $150", "by lowest price", "below 200 dollars",
                            "cheapest first"],
        "filter_by_rating": ["5 star", "4 star", "top rated", "highly reviewed"],
    },
}

ATIS = {
    "templates": [
        "i want to fly from {fromloc.city_name} to {toloc.city_name}",
        "show me flights from {fromloc.city_name} to {toloc.city_name} on {depart_date.day_name}",
        "what flights leave {fromloc.city_name} in the {depart_time.period_of_day} and arrive in {toloc.city_name}",
        "list {airline_name} flights to {toloc.city_name}",
        "what is the fare from {fromloc.city_name} to {toloc.city_name} in {class_type}",
        "which airline is {airline_code}",
        "what does fare code {fare_basis_code} mean",
        "i need a {round_trip} ticket from {fromloc.city_name} to {toloc.city_name} {depart_date.month_name} {depart_date.day_number}",
        "flights arriving in {toloc.city_name} on {arrive_date.day_name} {arrive_time.time_relative} {arrive_time.time}",
        "what type of aircraft is used on flight {flight_number}",
        "show me {meal} flights from {fromloc.city_name}",
        "flights from {fromloc.airport_code} to {toloc.airport_name}",
        "i live in {fromloc.city_name} and i'd like to make a trip to {toloc.city_name}",
        "show {flight_stop} flights from {fromloc.city_name} to {toloc.state_name}",
        "what is the {cost_relative} fare to {toloc.city_name}",
        "is there {transport_type} in {city_name}",
        "what does {aircraft_code} mean",
        "flights {depart_date.today_relative} from {fromloc.city_name} {depart_time.time_relative} {depart_time.time}",
        "{airline_code} flights that stop in {stoploc.city_name}",
        "show me the {flight_mod} flight from {fromloc.city_name} to {toloc.city_name}",
    ],
    "values": {
        "fromloc.city_name": ["denver", "boston", "pittsburgh", "san francisco",
                              "dallas fort worth", "atlanta", "baltimore"],
        "toloc.city_name": ["pittsburgh", "atlanta", "oakland", "philadelphia",
                            "salt lake city", "washington"],
        "depart_date.day_name": ["monday", "thursday", "sunday"],
        "depart_time.period_of_day": ["morning", "afternoon", "evening"],
        "airline_name": ["united", "delta", "american airlines",
                         "us air"],
        "class_type": ["first class", "coach", "business class"],
        "airline_code": ["ua", "dl", "us", "aa"],
        "fare_basis_code": ["qx", "f", "y", "bh"],
        "round_trip": ["round trip", "one way"],
        "depart_date.month_name": ["june", "august", "november"],
        "depart_date.day_number": ["fifth", "22nd", "first"],
        "arrive_date.day_name": ["tuesday", "friday", "saturday"],
        "arrive_time.time_relative": ["before", "after", "around"],
        "arrive_time.time": ["5 pm", "noon", "8 am", "1130"],
        "flight_number": ["296", "1291", "838"],
        "meal": ["breakfast", "dinner", "lunch"],
        "fromloc.airport_code": ["bwi", "dfw", "sfo"],
        "toloc.airport_name": ["general mitchell international", "love field",
                               "logan airport"],
        "flight_stop": ["nonstop", "direct", "one stop"],
        "toloc.state_name": ["california", "texas", "colorado"],
        "cost_relative": ["cheapest", "lowest", "most expensive"],
        "transport_type": ["limousine service", "rental car", "taxi"],
        "city_name": ["boston", "denver", "pittsburgh"],
        "aircraft_code": ["d9s", "m80", "733"],
        "depart_date.today_relative": ["today", "tonight"],
        "depart_time.time_relative": ["after", "before"],
        "depart_time.time": ["6 pm", "10 am", "noon"],
        "stoploc.city_name": ["dallas", "chicago", "st. louis"],
        "flight_mod": ["earliest", "last", "first"],
    },
}


def instantiate(template, values, rng):
    tokens, tags = [], []
    for word in template.split():
        if word.startswith("{") and word.endswith("}"):
            slot = word[1:-1]
            value = rng.choice(values[slot]).split()
            for i, tok in enumerate(value):
                tokens.append(tok)
                tags.append(("B-" if i == 0 else "I-") + slot)
        else:
            tokens.append(word)
            tags.append("O")
    return tokens, tags


def generate(spec, prefix, n, seed):
    rng = random.Random(seed)
    seen = set()
    out = []
    templates = spec["templates"]
    attempts = 0
    while len(out) < n:
        attempts += 1
        tokens, tags = instantiate(templates[len(out) % len(templates)],
                                   spec["values"], rng)
        key = " ".join(tokens)
        if key in seen and attempts < 50 * n:
            continue
        seen.add(key)
        out.append((f"{prefix}-{len(out) + 1:04d}", tokens, tags))
    return out


def write(path, utterances):
    with open(path, "w", encoding="utf-8") as f:
        for i, (uid, tokens, tags) in enumerate(utterances):
            if i:
                f.write("\n")
            f.write(f"# id: {uid}\n")
            for tok, tag in zip(tokens, tags):
                f.write(f"{tok}\t{tag}\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(
        pathlib.Path(__file__).resolve().parent.parent / "data" / "corpora"))
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write(out / "vehicle_logger.conll", generate(VEHICLE_LOGGER, "vl", 150, 11))
    write(out / "united.conll", generate(UNITED, "ua", 150, 12))
    write(out / "trip_advisor.conll", generate(TRIP_ADVISOR, "ta", 150, 13))
    write(out / "atis_visual.conll", generate(ATIS, "atis", 200, 14))
    write(out / "atis_sample.conll", generate(ATIS, "atis-s", 50, 15))


if __name__ == "__main__":
    main()
