"""
JSON and CSV writers for command results.
"""

import csv
import json
import logging

RANGE_CSV_HEADER = ("theta", "re", "im", "support")


def dump_json(obj, stream):
    """
    Write a result as one JSON document followed by a newline.

    Args:
        obj: A dict, or an object with a to_dict method.
        stream: Writable text stream.
    """
    payload = obj.to_dict() if hasattr(obj, "to_dict") else obj
    json.dump(payload, stream, sort_keys=True)
    stream.write("\n")


def write_range_csv(sample, stream):
    """Write the boundary of a RangeSample with the columns theta,re,im,support."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(RANGE_CSV_HEADER)
    for theta, re, im, support in sample.rows():
        writer.writerow([repr(theta), repr(re), repr(im), repr(support)])


def export_json(obj, filename):
    """
    Export a result to a JSON file.

    Args:
        obj: A dict, or an object with a to_dict method.
        filename (str): Target file.

    Returns:
        bool: True if the file was written.
    """
    try:
        with open(filename, 'w') as f:
            dump_json(obj, f)
        logging.info(f"Result exported to {filename}")
        return True
    except OSError as e:
        logging.error(f"Failed to export result to {filename}: {e}")
        return False


def export_range_csv(sample, filename):
    """Export a RangeSample to a CSV file; returns True if the file was written."""
    try:
        with open(filename, 'w', newline='') as f:
            write_range_csv(sample, f)
        logging.info(f"Range boundary exported to {filename}")
        return True
    except OSError as e:
        logging.error(f"Failed to export range boundary to {filename}: {e}")
        return False
